namespace fwave {}
