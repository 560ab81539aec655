#include "eulerchar/euler.hpp"

#include <algorithm>

namespace eulerchar {

namespace {

std::string subset_str(const Subset& I) {
  std::string s = "{";
  for (size_t i = 0; i < I.size(); ++i) {
    if (i) s += ", ";
    s += std::to_string(I[i]);
  }
  return s + "}";
}

MeasureValue stratum_degree(const Subset& I, const StratumData& d, const Measure& m,
                            const SeedTable& seeds, EvalNotes* notes) {
  auto it = d.seeds.find(m.id);
  if (it != d.seeds.end()) return parse_measure_value(it->second, m);
  if (d.motive) return apply_measure(*d.motive, m, seeds, notes);
  throw Error(Errc::MissingSeed, "stratum " + subset_str(I) +
                                     " has neither a class nor a direct seed for measure " +
                                     m.str());
}

// [U] = sum_I (-1)^{|I|} [D_I], available only when every stratum has a class.
std::optional<MotiveClass> open_class(const GoodClosure& gc) {
  MotiveClass total = MotiveClass::zero();
  for (const auto& [I, d] : gc.strata) {
    if (!d.motive) return std::nullopt;
    total = (I.size() % 2) ? mc_sub(total, *d.motive) : mc_add(total, *d.motive);
  }
  return total;
}

}  // namespace

std::string ed_print(const EulerDegree& d) {
  return mv_print(d.value) + " [" + d.measure + "]";
}

EulerDegree strata_class(const GoodClosure& gc, const Measure& m,
                         const SeedTable& seeds, EvalNotes* notes) {
  MeasureValue acc = mv_zero(m);
  for (const auto& [I, d] : gc.strata) {
    MeasureValue deg = stratum_degree(I, d, m, seeds, notes);
    acc = (I.size() % 2) ? mv_sub(acc, deg) : mv_add(acc, deg);
  }
  return {m.str(), std::move(acc)};
}

Int piece_weight(const StratifiedVariety& v, size_t i) {
  return v.weights.empty() ? Int(1) : v.weights.at(i);
}

EulerDegree pro_euler_degree(const StratifiedVariety& v, const Measure& m,
                             const SeedTable& seeds, EvalNotes* notes) {
  if (!v.weights.empty() && v.weights.size() != v.pieces.size())
    throw Error(Errc::ParseError, "variety '" + v.name + "' has " +
                                      std::to_string(v.pieces.size()) + " pieces but " +
                                      std::to_string(v.weights.size()) + " weights");
  MeasureValue acc = mv_zero(m);
  for (size_t i = 0; i < v.pieces.size(); ++i) {
    EulerDegree d = strata_class(v.pieces[i], m, seeds, notes);
    acc = mv_add(acc, mv_scale(piece_weight(v, i), d.value));
  }
  return {m.str(), std::move(acc)};
}

EulerDegree chi_c(const StratifiedVariety& v, const Measure& m, const SeedTable& seeds,
                  EvalNotes* notes) {
  if (!v.weights.empty() && v.weights.size() != v.pieces.size())
    throw Error(Errc::ParseError, "variety '" + v.name + "' has " +
                                      std::to_string(v.pieces.size()) + " pieces but " +
                                      std::to_string(v.weights.size()) + " weights");
  std::optional<MeasureValue> via_strata;
  {
    MotiveClass acc = MotiveClass::zero();
    bool all = true;
    for (size_t i = 0; i < v.pieces.size(); ++i) {
      auto oc = open_class(v.pieces[i]);
      if (!oc) {
        all = false;
        break;
      }
      acc = mc_add(acc, mc_scale(piece_weight(v, i), *oc));
    }
    if (all && !v.pieces.empty()) via_strata = apply_measure(acc, m, seeds, notes);
  }

  std::optional<MeasureValue> via_total;
  if (v.total_class) via_total = apply_measure(*v.total_class, m, seeds, notes);

  if (via_strata && via_total && !mv_equal(*via_strata, *via_total))
    throw Error(Errc::CrossCheckMismatch,
                "chi_c of '" + v.name + "' under " + m.str() + ": strata give " +
                    mv_print(*via_strata) + " but the declared total class gives " +
                    mv_print(*via_total));
  if (via_strata) return {m.str(), std::move(*via_strata)};
  if (via_total) return {m.str(), std::move(*via_total)};
  throw Error(Errc::MissingSeed, "chi_c of '" + v.name +
                                     "' needs stratum classes or a total class");
}

BlowupAdditivityReport check_blowup_additivity(const BlowupSquareData& sq,
                                               const Measure& m, const SeedTable& seeds) {
  if (!sq.base.toric_source || !sq.total.toric_source)
    throw Error(Errc::UnsupportedClosure,
                "blow-up additivity checks need toric closures on both sides");
  const Fan& bf = *sq.base.toric_source;
  const Fan& tf = *sq.total.toric_source;

  MeasureValue base = apply_measure(class_of_toric(bf), m, seeds);
  MeasureValue total = apply_measure(class_of_toric(tf), m, seeds);

  MeasureValue center = mv_zero(m);
  if (!sq.center.empty())
    center = apply_measure(class_of_toric(star_fan(bf, sq.center)), m, seeds);

  MeasureValue exc = mv_zero(m);
  if (!sq.new_ray.empty()) {
    auto it = std::find(tf.rays.begin(), tf.rays.end(), sq.new_ray);
    if (it == tf.rays.end())
      throw Error(Errc::FanValidation,
                  "blow-up square: the exceptional ray is not a ray of the total fan");
    int idx = static_cast<int>(it - tf.rays.begin());
    exc = apply_measure(class_of_toric(star_fan(tf, ConeRef{idx})), m, seeds);
  }

  BlowupAdditivityReport r;
  r.holds = mv_equal(mv_sub(base, center), mv_sub(total, exc));
  r.base = {m.str(), std::move(base)};
  r.center = {m.str(), std::move(center)};
  r.total = {m.str(), std::move(total)};
  r.exceptional = {m.str(), std::move(exc)};
  return r;
}

GldReport check_good_local_data(const BlowupSquareData& sq, const Measure& m,
                                const SeedTable& seeds) {
  // The supported centers lie in the boundary divisor, so the open piece of
  // the base closure is untouched upstairs and no correction term appears.
  GldReport r;
  r.lhs = strata_class(sq.base, m, seeds);
  r.rhs = strata_class(sq.total, m, seeds);
  r.holds = (r.lhs == r.rhs);
  return r;
}

GaussBonnetReport gauss_bonnet_check(const StratifiedVariety& v, const Measure& m,
                                     const SeedTable& seeds) {
  GaussBonnetReport r;
  r.lhs = chi_c(v, m, seeds);
  r.rhs = pro_euler_degree(v, m, seeds);
  r.equal = (r.lhs == r.rhs);
  r.measure = m.str();
  return r;
}

}  // namespace eulerchar
