#include "coarsegrp/serialize.hpp"

#include <functional>

namespace cg::serialize {

json to_json(const intlat::Integer& v) {
  if (v.fits_slong_p()) return v.get_si();
  return v.get_str();
}

json to_json(const intlat::ExtNat& v) {
  if (!v.is_finite()) return "ALEPH0";
  return to_json(v.value());
}

json to_json(const intlat::IntVector& v) {
  json out = json::array();
  for (const auto& x : v) out.push_back(to_json(x));
  return out;
}

json to_json(const std::vector<intlat::IntVector>& v) {
  json out = json::array();
  for (const auto& x : v) out.push_back(to_json(x));
  return out;
}

namespace {

json flag(const morph::Flag& f) { return f.value; }

json subgroup(const fgab::Subgroup& s) {
  return {{"ambient", s.ambient().to_string()}, {"generators", to_json(s.generators())},
          {"literal", s.to_string()}};
}

json matrix(const intlat::IntMatrix& m) { return to_json(m.row_list()); }

json hom(const fgab::Hom& h) {
  return {{"source", h.source().to_string()}, {"target", h.target().to_string()},
          {"matrix", matrix(h.matrix())}};
}

json witness(const std::optional<quasihom::Witness>& w) {
  if (!w) return nullptr;
  return {{"x", to_json(w->x)}, {"y", to_json(w->y)}, {"defect", to_json(w->defect)}};
}

std::string status(quasihom::CheckStatus s) { return quasihom::to_string(s); }

}  // namespace

json to_json(const fgab::Invariants& inv) {
  json rp = json::object();
  for (const auto& [p, v] : inv.r_p) rp[std::to_string(p)] = v;
  json out = {{"r0", inv.r0},
              {"r_p", rp},
              {"r", to_json(inv.r)},
              {"order", to_json(inv.order)},
              {"r_d", to_json(inv.r_d)},
              {"w_d", to_json(inv.w_d)},
              {"w_d_tilde", to_json(inv.w_d_tilde)},
              {"witness_m", to_json(inv.witness_m)}};
  out["ell"] = inv.ell ? json(*inv.ell) : json("ALEPH0");
  return out;
}

json to_json(const morph::MorphismReport& r) {
  json flags = {{"bornologous", flag(r.bornologous)},
                {"large_scale_injective", flag(r.large_scale_injective)},
                {"effectively_proper", flag(r.effectively_proper)},
                {"uniformly_bounded_copreserving", flag(r.uniformly_bounded_copreserving)},
                {"large_scale_surjective", flag(r.large_scale_surjective)},
                {"coarse_equivalence", flag(r.coarse_equivalence)}};
  json reasons = {{"bornologous", r.bornologous.reason},
                  {"large_scale_injective", r.large_scale_injective.reason},
                  {"effectively_proper", r.effectively_proper.reason},
                  {"uniformly_bounded_copreserving", r.uniformly_bounded_copreserving.reason},
                  {"large_scale_surjective", r.large_scale_surjective.reason},
                  {"coarse_equivalence", r.coarse_equivalence.reason}};
  json witnesses = {{"kernel", subgroup(r.kernel)},
                    {"kernel_group", r.kernel_group.to_string()},
                    {"image", subgroup(r.image)},
                    {"image_index", to_json(r.image_index)}};
  return {{"flags", flags},
          {"reasons", reasons},
          {"witnesses", witnesses},
          {"ideal_pair", json::array({r.source_ideal, r.target_ideal})}};
}

json to_json(const morph::ClassifyResult& r) {
  json chain = json::array();
  for (const auto& step : r.chain)
    chain.push_back({{"label", step.label},
                     {"hom", hom(step.hom)},
                     {"coarse_equivalence", step.report.coarse_equivalence.value}});
  return {{"verdict", morph::to_string(r.verdict)}, {"reason", r.reason}, {"chain", chain}};
}

json to_json(const morph::DichotomyCheck& r) {
  return {{"status", morph::to_string(r.status)},
          {"source_value", to_json(r.source_value)},
          {"target_value", to_json(r.target_value)},
          {"reason", r.reason}};
}

json to_json(const quasihom::DefectReport& r) {
  json windows = json::array();
  for (const auto& w : r.windows)
    windows.push_back({{"radius", w.radius},
                       {"defect", to_json(w.defects)},
                       {"max_witness", witness(w.max_witness)}});
  json out = {{"map", r.map},
              {"ideal", r.ideal},
              {"windows", windows},
              {"exhaustive", r.exhaustive},
              {"pairs_examined", r.pairs_examined},
              {"verdict", quasihom::to_string(r.verdict)},
              {"defect", to_json(r.defect)},
              {"normalized", to_json(r.normalized)},
              {"exact_unbounded", r.exact_unbounded},
              {"reason", r.reason}};
  out["exact"] = r.exact ? to_json(*r.exact) : json(nullptr);
  return out;
}

json to_json(const quasihom::PerturbReport& r) {
  return {{"status", status(r.status)},
          {"closeness_bound", to_json(r.closeness_bound)},
          {"difference_stabilized", r.difference_stabilized},
          {"f", to_json(r.f_report)},
          {"g", to_json(r.g_report)},
          {"reason", r.reason}};
}

json to_json(const quasihom::ComposeReport& r) {
  return {{"status", status(r.status)},
          {"inner", to_json(r.inner_report)},
          {"outer", to_json(r.outer_report)},
          {"composite", to_json(r.composite_report)},
          {"outer_bornologous_on_window", r.outer_bornologous_on_window},
          {"reason", r.reason}};
}

json to_json(const quasihom::SectionReport& r) {
  return {{"status", status(r.status)},
          {"codomain_step", to_json(r.codomain_step)},
          {"section", r.section ? r.section->to_string() : ""},
          {"f_effectively_proper_on_window", r.f_effectively_proper_on_window},
          {"f", to_json(r.f_report)},
          {"s", to_json(r.section_report)},
          {"reason", r.reason}};
}

json to_json(const quasihom::InverseReport& r) {
  return {{"status", status(r.status)},
          {"gf_displacement", to_json(r.gf_displacement)},
          {"fg_displacement", to_json(r.fg_displacement)},
          {"f", to_json(r.f_report)},
          {"g", to_json(r.g_report)},
          {"reason", r.reason}};
}

json to_json(const cgcat::RationalMap& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m(i, j).get_str());
    rows.push_back(row);
  }
  return rows;
}

json to_json(const cgcat::Span& s) {
  return {{"literal", s.to_string()},
          {"apex", s.apex().to_string()},
          {"left", hom(s.left())},
          {"right", hom(s.right())},
          {"rational_form", to_json(cgcat::rationalize(s))}};
}

json to_json(const cgcat::EquivalenceReport& r) {
  json w = nullptr;
  if (r.witness)
    w = {{"apex", r.witness->apex.to_string()},
         {"s", hom(r.witness->s)},
         {"t", hom(r.witness->t)},
         {"origin", r.witness->origin}};
  return {{"verdict", cgcat::to_string(r.verdict)},
          {"rational_channel",
           {{"first", to_json(r.first_form)}, {"second", to_json(r.second_form)}, {"equal", r.rational_equal}}},
          {"witness_channel", {{"witness", w}, {"candidates_tried", r.candidates_tried}}},
          {"reason", r.reason}};
}

json to_json(const cgcat::OreSquare& sq) {
  return {{"apex", sq.apex.to_string()}, {"w_prime", hom(sq.w_prime)}, {"f_prime", hom(sq.f_prime)}};
}

json to_json(const cgcat::HomotopicalReport& r) {
  json v = json::array();
  for (const auto& f : r.violations) v.push_back({{"axiom", f.axiom}, {"certificate", f.certificate}});
  return {{"cancellation_cases", r.cancellation_cases},
          {"cancellation_premises", r.cancellation_premises},
          {"two_of_six_cases", r.two_of_six_cases},
          {"two_of_six_premises", r.two_of_six_premises},
          {"violations", v}};
}

json to_json(const bigrank::StructuredReport& r) {
  json out = {{"flags",
               {{"bornologous", flag(r.bornologous)},
                {"large_scale_injective", flag(r.large_scale_injective)},
                {"effectively_proper", flag(r.effectively_proper)},
                {"uniformly_bounded_copreserving", flag(r.uniformly_bounded_copreserving)},
                {"large_scale_surjective", flag(r.large_scale_surjective)},
                {"coarse_equivalence", flag(r.coarse_equivalence)}}},
              {"kernel_rank", to_json(r.kernel_rank)},
              {"image_rank", to_json(r.image_rank)}};
  out["cokernel"] = r.cokernel ? json(r.cokernel->to_string()) : json(nullptr);
  out["escape_certificate"] = r.escape_certificate ? json(*r.escape_certificate) : json(nullptr);
  return out;
}

json to_json(const geom::CoverWitness& w, const geom::CoverCheck& check) {
  json fams = json::array();
  for (const auto& f : w.families) fams.push_back(f.size());
  return {{"dim", w.dim},
          {"window", w.window},
          {"family_sizes", fams},
          {"bound", w.bound},
          {"separation_size", w.separation.size()},
          {"valid", check.ok},
          {"unbounded_suspect", check.unbounded_suspect},
          {"violation", check.violation}};
}

json to_json(const geom::PeriodicSet& a) {
  const auto large = geom::is_large(a);
  const auto small = geom::is_small(a);
  return {{"set", a.to_string()},
          {"large", large.value},
          {"large_certificate", large.certificate},
          {"small", small.value},
          {"small_certificate", small.certificate},
          {"dlt_vs_small", to_json(geom::dlt_vs_small(a))}};
}

json to_json(const geom::DltVsSmall& r) {
  return {{"in_d_less", r.in_d_less}, {"in_s", r.in_s}, {"equal_here", r.equal_here}, {"reason", r.reason}};
}

json to_json(const audit::AuditReport& r) {
  json sections = json::array();
  for (const auto& s : r.sections)
    sections.push_back({{"name", s.name},
                        {"cases", s.cases},
                        {"premises", s.premises},
                        {"violations", s.violations}});
  return {{"seed", r.seed},
          {"cases_per_section", r.cases_per_section},
          {"sections", sections},
          {"violation_count", r.violation_count()},
          {"passed", r.violation_count() == 0}};
}

json envelope(const std::string& command, json result) {
  return {{"schema_version", kSchemaVersion}, {"command", command}, {"result", std::move(result)}};
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

std::string dump_text(const json& j) {
  std::string out;
  std::function<void(const json&, const std::string&)> walk = [&](const json& node,
                                                                  const std::string& path) {
    if (node.is_object()) {
      for (const auto& [k, v] : node.items()) walk(v, path.empty() ? k : path + "." + k);
    } else if (node.is_array() && !node.empty() && (node.front().is_object() || node.front().is_array())) {
      for (std::size_t i = 0; i < node.size(); ++i) walk(node[i], path + "[" + std::to_string(i) + "]");
    } else {
      out += path + " = " + (node.is_string() ? node.get<std::string>() : node.dump()) + "\n";
    }
  };
  walk(j, "");
  return out;
}

}  // namespace cg::serialize
