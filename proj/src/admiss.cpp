#include "fwave/admiss.hpp"

#include "fwave/error.hpp"

namespace fwave {

namespace {

void validate_ds(int d, Rat s) {
  if (d < 2) fail_domain("DimensionUnsupported: admissible pairs need d >= 2");
  if (s <= Rat(0) || s >= Rat(d, 2)) {
    fail_domain("InfeasibleScaling: order s must lie in (0, d/2), got s=" +
                s.str() + " for d=" + std::to_string(d));
  }
}

}  // namespace

bool AdmissiblePair::ok() const {
  for (const PairCheck& c : checks) {
    if (!c.pass) return false;
  }
  return true;
}

std::vector<std::string> AdmissiblePair::violations() const {
  std::vector<std::string> out;
  for (const PairCheck& c : checks) {
    if (!c.pass) out.emplace_back(c.name);
  }
  return out;
}

AdmissiblePair check_admissible(Rat q, Rat r, int d, Rat s, PairKind kind) {
  validate_ds(d, s);

  AdmissiblePair p;
  p.q = q;
  p.r = r;
  p.d = d;
  p.s = s;
  p.kind = kind;

  const Rat iq = q.reciprocal();
  const Rat ir = r.reciprocal();

  if (kind == PairKind::Admissible) {
    p.checks.push_back({"q_bounds", Rat(2) <= q});
    p.checks.push_back({"r_bounds", Rat(2) <= r && !r.is_inf()});
    p.checks.push_back(
        {"dispersion", Rat(2) * iq + Rat(d - 1) * ir <= Rat(d - 1, 2)});
    p.checks.push_back({"scaling", iq + Rat(d) * ir == Rat(d, 2) - s});
  } else {
    p.checks.push_back({"q_bounds", Rat(1) <= q && q <= Rat(2)});
    p.checks.push_back({"r_bounds", Rat(1) < r && r <= Rat(2)});
    p.checks.push_back(
        {"dispersion", Rat(2) * iq + Rat(d - 1) * ir >= Rat(2) + Rat(d - 1, 2)});
    p.checks.push_back({"scaling", iq + Rat(d) * ir == Rat(2) + Rat(d, 2) - s});
  }
  return p;
}

bool endpoint_excluded(Rat q, Rat r, int d, PairKind kind) {
  if (d < 2) fail_domain("DimensionUnsupported: admissible pairs need d >= 2");
  const Rat first = Rat(2) * q.reciprocal();
  const Rat second = kind == PairKind::Admissible
                         ? Rat(d - 1) * (Rat(1, 2) - r.reciprocal())
                         : Rat(d - 1) * (r.reciprocal() - Rat(1, 2));
  return !(first == Rat(1) && second == Rat(1));
}

bool PairFamily::ok() const {
  return admissible.ok() && dual.ok() && q_ratio && r_ratio;
}

PairFamily construct_pairs(int d, Rat s) {
  validate_ds(d, s);

  const Rat q = Rat(d + 1) / (s * Rat(d - 1));
  const Rat r = Rat(2 * (d + 1)) / (Rat(d + 1) - Rat(4) * s);
  const Rat qt = Rat(d + 1) / (Rat(2) + s * Rat(d - 1));
  const Rat rt = Rat(2 * (d + 1)) / (Rat(5 + d) - Rat(4) * s);

  PairFamily fam;
  fam.admissible = check_admissible(q, r, d, s, PairKind::Admissible);
  fam.dual = check_admissible(qt, rt, d, s, PairKind::Dual);
  fam.q_ratio = q > Rat(2) * qt;
  fam.r_ratio = r >= Rat(2) * rt;
  return fam;
}

std::vector<ScanRow> optimality_scan(const std::vector<int>& dims,
                                     const std::vector<Rat>& s_values) {
  std::vector<ScanRow> rows;
  rows.reserve(dims.size() * s_values.size());
  for (int d : dims) {
    for (Rat s : s_values) {
      validate_ds(d, s);
      ScanRow row;
      row.d = d;
      row.s = s;
      row.r_max = Rat(2 * (d + 1)) / (Rat(d + 1) - Rat(4) * s);
      row.rt_min = Rat(2 * (d + 1)) / (Rat(5 + d) - Rat(4) * s);
      row.ratio = row.r_max / row.rt_min;
      row.feasible_scaling = Rat(4) * s >= Rat(d - 3);

      const PairFamily fam = construct_pairs(d, s);
      row.q_ratio = fam.q_ratio;
      row.r_ratio = fam.r_ratio;
      row.all_ok = fam.ok();
      rows.push_back(row);
    }
  }
  return rows;
}

}  // namespace fwave
