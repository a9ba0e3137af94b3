#include "dsp/instance_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace dsp {

using nlohmann::json;

namespace {

std::pair<int, int> line_column(const std::string& text, std::size_t byte) {
  int line = 1, col = 1;
  for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

const json& field(const json& obj, const char* name, const std::string& path) {
  if (!obj.is_object())
    throw ParseError(path + ": expected an object");
  const auto it = obj.find(name);
  if (it == obj.end())
    throw ParseError(path + ": missing field \"" + name + "\"");
  return *it;
}

Rational rational_field(const json& v, const std::string& path) {
  if (!v.is_string())
    throw ParseError(path +
                     ": rationals must be strings like \"3/4\" (numbers are "
                     "rejected)");
  try {
    return parse_rational(v.get<std::string>());
  } catch (const ValidationError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

json rational_json(const Rational& r) { return to_string(r); }

}  // namespace

Instance parse_instance(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    const auto [line, col] = line_column(text, e.byte);
    throw ParseError("syntax error at line " + std::to_string(line) +
                         ", column " + std::to_string(col) + ": " + e.what(),
                     line, col);
  }
  Instance inst;
  const json& mode = field(doc, "mode", "$");
  if (!mode.is_string()) throw ParseError("$.mode: expected a string");
  try {
    inst.mode = parse_mode(mode.get<std::string>());
  } catch (const ValidationError& e) {
    throw ParseError(std::string("$.mode: ") + e.what());
  }
  const json& classes = field(doc, "classes", "$");
  if (!classes.is_array() || classes.empty())
    throw ParseError("$.classes: expected a non-empty array");
  for (std::size_t j = 0; j < classes.size(); ++j) {
    const std::string cpath = "$.classes[" + std::to_string(j) + "]";
    const json& evs = field(classes[j], "eigenvalues", cpath);
    if (!evs.is_array() || evs.empty())
      throw ParseError(cpath + ".eigenvalues: expected a non-empty array");
    ClassSpec c;
    for (std::size_t k = 0; k < evs.size(); ++k) {
      const std::string epath = cpath + ".eigenvalues[" + std::to_string(k) + "]";
      EigenSlot slot;
      slot.value.re = rational_field(field(evs[k], "re", epath), epath + ".re");
      if (evs[k].contains("im"))
        slot.value.im = rational_field(evs[k]["im"], epath + ".im");
      const json& blocks = field(evs[k], "blocks", epath);
      if (!blocks.is_array() || blocks.empty())
        throw ParseError(epath + ".blocks: expected a non-empty array");
      std::vector<int> parts;
      for (const auto& b : blocks) {
        if (!b.is_number_integer() || b.get<long long>() <= 0 ||
            b.get<long long>() > 1'000'000)
          throw ParseError(epath + ".blocks: block sizes must be positive "
                                   "integers");
        parts.push_back(b.get<int>());
      }
      slot.blocks = Partition(std::move(parts));
      c.slots.push_back(std::move(slot));
    }
    inst.classes.push_back(std::move(c));
  }
  validate_instance(inst);
  return inst;
}

Instance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_instance(ss.str());
}

json instance_to_json(const Instance& inst) {
  json classes = json::array();
  for (const auto& c : inst.classes) {
    json evs = json::array();
    for (const auto& s : c.slots)
      evs.push_back({{"re", rational_json(s.value.re)},
                     {"im", rational_json(s.value.im)},
                     {"blocks", s.blocks.parts()}});
    classes.push_back({{"eigenvalues", evs}});
  }
  return {{"mode", to_string(inst.mode)}, {"classes", classes}};
}

std::string serialize_instance(const Instance& inst) {
  return instance_to_json(inst).dump(2) + "\n";
}

json to_json(const RelationWitness& rel) {
  return {{"N", rel.N},
          {"picks", rel.picks},
          {"target", to_string(rel.target)}};
}

json to_json(const ExtReport& rep) {
  return {{"l", rep.l},
          {"n", rep.n},
          {"s", rep.s},
          {"delta", rep.delta},
          {"d1", rep.d1},
          {"d2", rep.d2},
          {"r1", rep.r1},
          {"r2", rep.r2},
          {"dprime", rep.dprime},
          {"ddprime", rep.ddprime},
          {"dtriple", rep.dtriple},
          {"case_tag", to_string(rep.case_tag)},
          {"case_q", rep.case_q},
          {"class1_disjoint", rep.class1_disjoint},
          {"upper_alpha_beta", rep.upper_alpha_beta},
          {"lower_alpha_beta", rep.lower_alpha_beta}};
}

json to_json(const RealizationReport& rep) {
  json dist = json::array();
  for (double d : rep.membership_distance)
    dist.push_back(std::isfinite(d) ? json(d) : json(nullptr));
  return {{"residual", rep.residual},
          {"membership_distance", dist},
          {"member", rep.member},
          {"algebra_dimension", rep.algebra_dimension},
          {"centralizer_dimension", rep.centralizer_dimension},
          {"converged", rep.converged}};
}

json verdict_to_json(const Instance& inst, const Verdict& v) {
  json trace = json::array();
  for (const auto& e : v.trace)
    trace.push_back({{"rule", e.rule}, {"anchor", e.anchor}, {"facts", e.facts}});
  const int n = inst.n();
  json out = {{"mode", to_string(inst.mode)},
              {"n", n},
              {"p", inst.p()},
              {"d", v.dq.d},
              {"r", v.dq.r},
              {"kappa", v.dq.kappa},
              {"sum_d", v.dq.sum_d()},
              {"r_tail_sum", v.dq.sum_r_tail()},
              {"trace_sum", to_string(v.dq.trace_sum)},
              {"trace_ok", v.dq.trace_ok},
              {"convention2", v.dq.convention2},
              {"alpha", check_alpha(v.dq, n)},
              {"beta", check_beta(v.dq, n)},
              {"case_A", v.dq.convention2 && detect_case_A(inst)},
              {"rigid_family",
               to_string(v.dq.convention2 ? classify_rigid_family(inst)
                                          : RigidFamily::none)},
              {"min_relation_N", v.min_relation_N ? json(*v.min_relation_N)
                                                  : json(nullptr)},
              {"search_unknown", v.search_unknown},
              {"verdict", to_string(v.status)},
              {"trace", trace}};
  return out;
}

}  // namespace dsp
