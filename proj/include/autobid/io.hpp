#pragma once

// JSON / CSV encodings.  Every rational travels as a string, "p" or "p/q";
// +inf is "+inf".
//
//   instance:  {"bidders": m, "queries": [{"values": ["4","1"]}, ...]}
//   targets:   {"targets": ["1", "1/2"]}
//   bids:      {"bids": [["12","3"], ["1","2"]]}      (one row per bidder)

#include <cstddef>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "autobid/core_model.hpp"
#include "autobid/errors.hpp"
#include "autobid/ic_analysis.hpp"
#include "autobid/nonuniform.hpp"
#include "autobid/oracle.hpp"
#include "autobid/rational.hpp"
#include "autobid/uniform.hpp"
#include "json.hpp"

namespace autobid::io {

using nlohmann::json;

inline Rational rational_from(const json& j) {
  if (!j.is_string()) throw InputError("expected a rational string, got " + j.dump());
  return parse_rational(j.get<std::string>());
}

inline ExtRational ext_rational_from(const json& j) {
  if (!j.is_string()) throw InputError("expected a rational string or \"+inf\", got " + j.dump());
  return parse_ext_rational(j.get<std::string>());
}

inline json to_json(const Rational& r) { return to_string(r); }
inline json to_json(const ExtRational& r) { return to_string(r); }

inline json to_json(const std::vector<std::size_t>& xs) {
  json out = json::array();
  for (auto x : xs) out.push_back(x);
  return out;
}

// Raw value matrix; callers decide whether to normalize.
inline ValueMatrix values_from_json(const json& j) {
  try {
    const auto m = j.at("bidders").get<std::size_t>();
    const auto& queries = j.at("queries");
    if (!queries.is_array()) throw InputError("\"queries\" must be an array");
    ValueMatrix values(m);
    for (std::size_t q = 0; q < queries.size(); ++q) {
      const auto& vs = queries[q].at("values");
      if (!vs.is_array() || vs.size() != m)
        throw InputError("query " + std::to_string(q + 1) + " must list exactly " + std::to_string(m) + " values");
      for (std::size_t i = 0; i < m; ++i) values[i].push_back(rational_from(vs[i]));
    }
    return values;
  } catch (const json::exception& e) {
    throw InputError(std::string("malformed instance JSON: ") + e.what());
  }
}

inline Instance instance_from_json(const json& j) { return Instance(values_from_json(j)); }

inline json to_json(const Instance& instance) {
  json queries = json::array();
  for (std::size_t q = 0; q < instance.queries(); ++q) {
    json vs = json::array();
    for (std::size_t i = 0; i < instance.bidders(); ++i) vs.push_back(to_string(instance.value(i, q)));
    queries.push_back({{"values", vs}});
  }
  return {{"bidders", instance.bidders()}, {"queries", queries}};
}

inline Targets targets_from_json(const json& j) {
  try {
    std::vector<Rational> ts;
    for (const auto& t : j.at("targets")) ts.push_back(rational_from(t));
    return Targets(std::move(ts));
  } catch (const json::exception& e) {
    throw InputError(std::string("malformed targets JSON: ") + e.what());
  }
}

inline json to_json(const Targets& targets) {
  json ts = json::array();
  for (const auto& t : targets.values()) ts.push_back(to_string(t));
  return {{"targets", ts}};
}

inline BidProfile bids_from_json(const json& j) {
  try {
    BidProfile p;
    for (const auto& row : j.at("bids")) {
      std::vector<ExtRational> r;
      for (const auto& b : row) r.push_back(ext_rational_from(b));
      p.bids.push_back(std::move(r));
    }
    for (const auto& row : p.bids)
      if (row.size() != p.queries()) throw InputError("ragged bid matrix");
    return p;
  } catch (const json::exception& e) {
    throw InputError(std::string("malformed bids JSON: ") + e.what());
  }
}

inline json to_json(const BidProfile& p) {
  json rows = json::array();
  for (const auto& row : p.bids) {
    json r = json::array();
    for (const auto& b : row) r.push_back(to_string(b));
    rows.push_back(r);
  }
  return {{"bids", rows}};
}

inline json to_json(const UniformProfile& p) { return {{"mu1", to_string(p.mu1)}, {"mu2", to_string(p.mu2)}}; }

inline json to_json(const ExistenceCertificate& c) {
  return {{"k", c.k},       {"c1", to_json(c.c1)}, {"c2", to_json(c.c2)},
          {"kmin", c.kmin}, {"kmax", c.kmax},      {"exists", c.exists}};
}

inline json to_json(const Inequality& q) {
  json out{{"holds", q.holds}, {"vacuous", q.vacuous}};
  if (!q.vacuous) {
    out["lhs"] = to_string(q.lhs);
    out["rhs"] = to_string(q.rhs);
  }
  return out;
}

inline json to_json(const ConditionLedger& l) {
  return {{"k", l.k},
          {"ratio_window",
           {{"lower", to_json(l.ratio_window.lower)},
            {"bid_ratio", to_string(l.ratio_window.bid_ratio)},
            {"upper", to_json(l.ratio_window.upper)},
            {"holds", l.ratio_window.holds}}},
          {"bidder1_tcpa", to_json(l.bidder1_tcpa)},
          {"bidder2_tcpa", to_json(l.bidder2_tcpa)},
          {"bidder1_stable", to_json(l.bidder1_stable)},
          {"bidder2_stable", to_json(l.bidder2_stable)},
          {"undominated", to_json(l.undominated)},
          {"all_hold", l.all_hold()}};
}

inline json to_json(const FeasibilityInterval& iv) {
  return {{"lower", to_json(iv.lower)},
          {"lower_strict", iv.lower_strict},
          {"upper", to_json(iv.upper)},
          {"upper_strict", iv.upper_strict},
          {"empty", iv.empty()}};
}

inline json to_json(const Outcome& o) {
  json winners = json::array();
  for (auto w : o.allocation.winner) winners.push_back(w + 1);
  json costs = json::array();
  for (const auto& c : o.costs) costs.push_back(to_string(c));
  return {{"winners", winners}, {"costs", costs}};
}

inline json to_json(const EquilibriumVerdict& v) {
  json bidders = json::array();
  for (std::size_t i = 0; i < v.bidders.size(); ++i) {
    const auto& b = v.bidders[i];
    json entry{{"bidder", i + 1},         {"spend", to_string(b.spend)}, {"budget", to_string(b.budget)},
               {"tcpa", b.tcpa},          {"stable", b.stable}};
    if (b.deviation) {
      json dev = json::array();
      for (auto q : *b.deviation) dev.push_back(q + 1);
      entry["deviation"] = dev;
    }
    bidders.push_back(entry);
  }
  return {{"outcome", to_json(v.outcome)}, {"bidders", bidders}, {"equilibrium", v.equilibrium}};
}

inline json to_json(const CrosscheckRow& r) {
  return {{"k", r.k},
          {"tie_break", std::string(to_string(r.tie))},
          {"closed_form", r.closed_form},
          {"raw", r.raw},
          {"witness_verified", r.witness_verified},
          {"agree", r.agree()}};
}

inline json to_json(const CrosscheckReport& r) {
  json rows = json::array();
  for (const auto& row : r.rows) rows.push_back(to_json(row));
  json out{{"agree", r.agree}, {"equilibria", to_json(r.equilibria)}, {"rows", rows}};
  if (r.counterexample) {
    json ce{{"row", to_json(r.counterexample->row)}, {"certificate", to_json(r.counterexample->certificate)}};
    if (r.counterexample->raw_witness) ce["raw_witness"] = to_json(*r.counterexample->raw_witness);
    out["counterexample"] = ce;
  }
  return out;
}

inline json to_json(const AuditReport& r) {
  json rows = json::array();
  for (const auto& row : r.rows) {
    json entry{{"report", to_string(row.report)}, {"ks", to_json(row.equilibria)}};
    entry["min_lw"] = row.min_lw ? json(to_string(*row.min_lw)) : json(nullptr);
    entry["max_lw"] = row.max_lw ? json(to_string(*row.max_lw)) : json(nullptr);
    rows.push_back(entry);
  }
  json violations = json::array();
  for (const auto& v : r.violations)
    violations.push_back({{"property", v.property == IcProperty::RiskAverse ? "raic" : "oaic"},
                          {"reports", {to_string(v.lower_report), to_string(v.higher_report)}},
                          {"values", {to_string(v.lower_value), to_string(v.higher_value)}}});
  json empty = json::array();
  for (const auto& e : r.empty_reports) empty.push_back(to_string(e));
  return {{"true_target", to_string(r.true_target)},
          {"other_target", to_string(r.other_target)},
          {"rows", rows},
          {"raic", std::string(to_string(r.raic))},
          {"oaic", std::string(to_string(r.oaic))},
          {"violations", violations},
          {"empty_reports", empty}};
}

// report,ks,min_lw,max_lw -- ks is ';'-separated, absent welfare is an empty field.
inline std::string to_csv(const AuditReport& r) {
  std::ostringstream os;
  os << "report,ks,min_lw,max_lw\n";
  for (const auto& row : r.rows) {
    os << to_string(row.report) << ',';
    for (std::size_t a = 0; a < row.equilibria.size(); ++a) os << (a ? ";" : "") << row.equilibria[a];
    os << ',' << (row.min_lw ? to_string(*row.min_lw) : "") << ',' << (row.max_lw ? to_string(*row.max_lw) : "")
       << '\n';
  }
  return os.str();
}

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw InputError(path + ": " + e.what());
  }
}

}  // namespace autobid::io
