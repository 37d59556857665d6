#include "choired/report.hpp"

#include <fmt/format.h>

namespace choired {

namespace {

Json rational_json(const Rational& r) {
  return Json{{"exact", to_string(r)}, {"decimal", format_decimal(r, 7)}};
}

}  // namespace

Json census_json(const CensusReport& r) {
  const auto& o = r.options;
  const auto& t = r.tally;
  Json j;
  j["schema"] = kCensusSchema;
  j["version"] = kVersion;
  j["curve"] = r.curve_label;
  j["conductor"] = r.conductor;
  j["p"] = r.p;
  j["a_p"] = r.ap;
  j["reduction"] = to_string(r.reduction);
  j["surjectivity"] = to_string(r.surjectivity);
  j["kounter_primes"] = r.kounter;
  j["options"] = {{"mode", to_string(o.mode)},
                  {"class_sampling_rate", o.class_sampling_rate},
                  {"seed", o.seed},
                  {"tol_1e6", o.tol_1e6},
                  {"tol_1e7", o.tol_1e7},
                  {"total_rel_tol", o.total_rel_tol},
                  {"assume_surjective", o.assume_surjective}};
  j["range"] = {{"lo", t.lo}, {"hi", t.hi}};
  j["x"] = t.hi;

  Json parts = Json::object();
  for (std::size_t i = 0; i < t.per_partition.size(); ++i)
    parts[r.partition_labels[i]] = t.per_partition[i];
  j["tallies"] = {{"total_fields", t.total_fields},
                  {"coprime_fields", t.coprime_fields},
                  {"per_partition", parts},
                  {"choired_ss_plus", t.choired_ss_plus},
                  {"choired_ord_plus", t.choired_ord_plus},
                  {"choired_ord_minus", t.choired_ord_minus}};

  const auto& th = r.theoretical;
  j["theoretical"] = {{"r", th.r},
                      {"k", th.k},
                      {"frak_d", rational_json(th.frak_d)},
                      {"delta_pi", rational_json(th.delta_pi)},
                      {"delta_choired_ss", rational_json(th.delta_choired_ss)},
                      {"delta_choired_ord", rational_json(th.delta_choired_ord)},
                      {"bd_bound", rational_json(th.bd_bound)},
                      {"c_p", th.cp}};

  Json rows = Json::array();
  for (const auto& row : r.rows)
    rows.push_back({{"name", row.name},
                    {"count", row.count},
                    {"empirical", row.empirical},
                    {"theoretical", row.theoretical},
                    {"abs_error", row.abs_error},
                    {"tolerance", row.tolerance},
                    {"verdict", row.verdict}});
  j["ratios"] = rows;
  j["tolerance_note"] = kToleranceNote;

  if (r.class_sample) {
    const auto& cs = *r.class_sample;
    j["class_sample"] = {{"sample_size", cs.sample_size},
                         {"p_divides_h", cs.p_divides},
                         {"c_p_star_estimate", cs.estimate},
                         {"ci95", {cs.ci_low, cs.ci_high}},
                         {"c_p_formula", cs.cp_formula},
                         {"note", "observational; the relation between c_p and c_p* is open"}};
  } else {
    j["class_sample"] = nullptr;
  }
  j["warnings"] = r.warnings;
  j["passed"] = r.passed();
  return j;
}

std::string census_tsv(const CensusReport& report) {
  std::string out = "name\tcount\tempirical\ttheoretical\tabs_error\tverdict\n";
  for (const auto& row : report.rows)
    out += fmt::format("{}\t{}\t{:.7f}\t{:.7f}\t{:.7f}\t{}\n", row.name, row.count, row.empirical,
                       row.theoretical, row.abs_error, row.verdict);
  return out;
}

Json density_json(const DensityFormulas& f) {
  Json j;
  j["schema"] = kDensitySchema;
  j["version"] = kVersion;
  j["mode"] = to_string(f.mode);
  j["r"] = f.r;
  j["k"] = f.k;
  j["frak_d"] = rational_json(f.frak_d);
  j["delta_pi"] = rational_json(f.delta_pi);
  j["delta_choired_ss"] = rational_json(f.delta_choired_ss);
  j["delta_choired_ord"] = rational_json(f.delta_choired_ord);
  j["density"] = rational_json(f.target());
  j["bd_bound"] = rational_json(f.bd_bound);
  j["c_p"] = f.cp;
  return j;
}

Json primescan_json(const PrimeScan& scan) {
  Json j;
  j["schema"] = kPrimeScanSchema;
  j["version"] = kVersion;
  j["K_disc"] = scan.K_disc;
  j["h_K"] = scan.hK;
  j["N_minus"] = scan.n_minus;
  j["hypothesis_ok"] = scan.hypothesis_ok;
  j["hypothesis_note"] = scan.hypothesis_note;
  j["serre_bound"] = {{"kraus", scan.serre.kraus},
                      {"cojocaru", scan.serre.cojocaru},
                      {"value", scan.serre.value}};
  std::size_t ss = 0;
  Json rows = Json::array();
  for (const auto& row : scan.rows) {
    ss += row.reduction == Reduction::supersingular;
    rows.push_back({{"p", row.p},
                    {"a_p", row.ap},
                    {"reduction", to_string(row.reduction)},
                    {"split", row.p_split_in_K},
                    {"ramified", row.p_ramified_in_K},
                    {"bound_ok", row.above_serre_bound},
                    {"congruence_ok", row.q_congruence_clear},
                    {"ap_ok", row.ap_nondegenerate},
                    {"hK_ok", row.hK_ok ? Json(*row.hK_ok) : Json(nullptr)},
                    {"verdict", to_string(row.verdict)},
                    {"reason", row.reason}});
  }
  j["supersingular_fraction"] =
      scan.rows.empty() ? 0.0 : static_cast<double>(ss) / static_cast<double>(scan.rows.size());
  j["rows"] = rows;
  return j;
}

std::string primescan_tsv(const PrimeScan& scan) {
  std::string out = "p\ta_p\treduction\tsplit\tbound_ok\tcongruence_ok\tap_ok\thK_ok\tverdict\n";
  auto yn = [](bool b) { return b ? "1" : "0"; };
  for (const auto& row : scan.rows)
    out += fmt::format("{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\n", row.p, row.ap,
                       to_string(row.reduction), yn(row.p_split_in_K), yn(row.above_serre_bound),
                       yn(row.q_congruence_clear), yn(row.ap_nondegenerate),
                       row.hK_ok ? yn(*row.hK_ok) : "-", to_string(row.verdict));
  return out;
}

}  // namespace choired
