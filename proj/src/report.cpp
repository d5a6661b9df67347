#include "ringstab/report.hpp"

#include <sstream>

namespace ringstab {

Json json_ring(const Ring& ring) {
  Json j;
  switch (ring->kind) {
    case RingKind::Integers: j["kind"] = "integers"; break;
    case RingKind::Rationals: j["kind"] = "rationals"; break;
    case RingKind::QuadraticSqrtMinus5: j["kind"] = "quadratic_sqrt_minus5"; break;
    case RingKind::PolynomialOverRationals: j["kind"] = "polynomial"; break;
    case RingKind::CuspidalCubicQuotient: j["kind"] = "cuspidal_cubic"; break;
  }
  if (ring->kind == RingKind::PolynomialOverRationals)
    j["variables"] = ring->variables;
  j["description"] = ring->describe();
  return j;
}

Json json_ideal(const Ideal& ideal) {
  Json gens = Json::array();
  for (const auto& g : ideal.canonical_generators()) gens.push_back(g.to_string());
  return gens;
}

Json json_minors(const std::map<IndexSet, RingElement>& minors) {
  Json j = Json::object();
  for (const auto& [I, v] : minors) j[I.to_string()] = v.to_string();
  return j;
}

Json json_frac_matrix(const FracMatrix& m) {
  Json rows = Json::array();
  for (int i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(m.at(i, j).to_string());
    rows.push_back(row);
  }
  return rows;
}

Json json_report(const StabilizabilityReport& report) {
  Json j;
  j["verdict"] = report.verdict;
  j["minors"] = json_minors(report.minors);
  j["minor_ideal"] = json_ideal(report.minor_ideal);
  Json q = Json::object();
  for (const auto& [I, ideal] : report.quotient_ideals)
    q[I.to_string()] = json_ideal(ideal);
  j["quotient_ideals"] = q;
  if (report.witness) {
    Json w = Json::array();
    for (const auto& term : *report.witness) {
      Json t;
      t["index_set"] = term.I.to_string();
      t["x"] = term.x.to_string();
      t["r"] = term.r.to_string();
      w.push_back(t);
    }
    j["witness"] = w;
    Json cof = Json::array();
    for (const auto& [c, g] : report.witness_cofactors) {
      Json t;
      t["cofactor"] = c.to_string();
      t["generator"] = g.to_string();
      cof.push_back(t);
    }
    j["witness_cofactors"] = cof;
  } else {
    j["negative_certificate"] = report.negative_certificate;
  }
  return j;
}

Json json_certificate(const ControllerCertificate& cert) {
  Json j;
  j["stable"] = cert.stable();
  j["det_condition"] = cert.det_condition;
  j["all_entries_in_ring"] = cert.all_entries_in_ring;
  j["repair_applied"] = cert.repair_applied;
  if (cert.controller_causal) j["controller_causal"] = *cert.controller_causal;
  if (cert.C.rows() > 0) j["controller"] = json_frac_matrix(cert.C);
  if (cert.H.rows() > 0) j["h_matrix"] = json_frac_matrix(cert.H);
  Json steps = Json::array();
  for (const auto& s : cert.steps) {
    Json t;
    t["index_set"] = s.I.to_string();
    t["x"] = s.x.to_string();
    t["r"] = s.r.to_string();
    t["q"] = s.q.to_string();
    t["clearing_power"] = s.clearing_power;
    steps.push_back(t);
  }
  j["transcript"] = steps;
  j["notes"] = cert.notes;
  return j;
}

Json json_cross_checks(const CrossCheckReport& report) {
  Json j;
  j["all_ok"] = report.all_ok;
  j["inconclusive"] = report.inconclusive;
  j["radical_bound"] = report.radical_bound;
  Json items = Json::array();
  for (const auto& item : report.items) {
    Json t;
    t["index_set"] = item.I.to_string();
    t["check"] = item.check;
    t["status"] = item.status;
    if (!item.detail.empty()) t["detail"] = item.detail;
    items.push_back(t);
  }
  j["items"] = items;
  return j;
}

Json json_product_check(const ProductCheckReport& report) {
  Json j;
  j["t_plant"] = json_ideal(report.t_plant);
  j["t_controller"] = json_ideal(report.t_controller);
  j["product_ideal"] = json_ideal(report.product);
  j["t_closed_loop"] = json_ideal(report.t_closed_loop);
  j["verdict"] = report.iso.verdict == IsoVerdict::Isomorphic ? "isomorphic"
                                                              : "inconclusive";
  j["detail"] = report.iso.detail;
  return j;
}

namespace {

std::string ideal_text(const Ideal& ideal) {
  auto gens = ideal.canonical_generators();
  if (gens.empty()) return "(0)";
  std::string s = "(";
  for (std::size_t i = 0; i < gens.size(); ++i) {
    if (i) s += ", ";
    s += gens[i].to_string();
  }
  return s + ")";
}

}  // namespace

std::string witness_line(const StabilizabilityReport& report) {
  std::ostringstream out;
  out << "1 = ";
  bool first = true;
  for (const auto& [c, g] : report.witness_cofactors) {
    if (!first) out << " + ";
    out << "(" << c.to_string() << ")*(" << g.to_string() << ")";
    first = false;
  }
  return out.str();
}

std::string text_report(const StabilizabilityReport& report) {
  std::ostringstream out;
  out << "full-size minors of T = [N^t D^t]^t:\n";
  for (const auto& [I, v] : report.minors)
    out << "  t" << I.to_string() << " = " << v.to_string() << "\n";
  out << "minor ideal t = " << ideal_text(report.minor_ideal) << "\n";
  out << "quotient ideals ((t_I) : t):\n";
  for (const auto& [I, q] : report.quotient_ideals)
    out << "  " << I.to_string() << ": " << ideal_text(q) << "\n";
  if (report.verdict) {
    out << "verdict: stabilizable\n";
    out << "witness: " << witness_line(report) << "\n";
    for (const auto& term : *report.witness)
      out << "  x" << term.I.to_string() << " = " << term.x.to_string()
          << "  (r = " << term.r.to_string() << ")\n";
  } else {
    out << "verdict: not stabilizable\n";
    out << "certificate: " << report.negative_certificate << "\n";
  }
  return out.str();
}

std::string text_certificate(const ControllerCertificate& cert) {
  std::ostringstream out;
  if (cert.C.rows() > 0) {
    out << "controller C:\n";
    for (int i = 0; i < cert.C.rows(); ++i) {
      out << "  ";
      for (int j = 0; j < cert.C.cols(); ++j) {
        if (j) out << ", ";
        out << cert.C.at(i, j).to_string();
      }
      out << "\n";
    }
  }
  if (cert.H.rows() > 0) {
    out << "closed loop H(P,C):\n";
    for (int i = 0; i < cert.H.rows(); ++i) {
      out << "  ";
      for (int j = 0; j < cert.H.cols(); ++j) {
        if (j) out << ", ";
        out << cert.H.at(i, j).to_string();
      }
      out << "\n";
    }
  }
  out << "det(E + PC) nonzero: " << (cert.det_condition ? "yes" : "no") << "\n";
  out << "all H entries in the ring: "
      << (cert.all_entries_in_ring ? "yes" : "no") << "\n";
  out << "repair applied: " << (cert.repair_applied ? "yes" : "no") << "\n";
  if (cert.controller_causal)
    out << "controller causal: " << (*cert.controller_causal ? "yes" : "no")
        << "\n";
  if (!cert.steps.empty()) {
    out << "synthesis transcript:\n";
    for (const auto& s : cert.steps)
      out << "  I = " << s.I.to_string() << ", x = " << s.x.to_string()
          << ", r = " << s.r.to_string() << ", q = " << s.q.to_string()
          << " (clearing power " << s.clearing_power << ")\n";
  }
  for (const auto& note : cert.notes) out << "note: " << note << "\n";
  out << "verdict: " << (cert.stable() ? "stabilizing" : "not stabilizing")
      << "\n";
  return out.str();
}

std::string text_cross_checks(const CrossCheckReport& report) {
  std::ostringstream out;
  for (const auto& item : report.items) {
    out << "  " << item.I.to_string() << "  " << item.check << ": "
        << item.status;
    if (!item.detail.empty()) out << " (" << item.detail << ")";
    out << "\n";
  }
  out << "radical power bound: " << report.radical_bound << "\n";
  out << "result: "
      << (report.all_ok
              ? (report.inconclusive ? "ok with inconclusive items" : "all ok")
              : "violations found")
      << "\n";
  return out.str();
}

std::string text_product_check(const ProductCheckReport& report) {
  std::ostringstream out;
  out << "t_P = " << ideal_text(report.t_plant) << "\n";
  out << "t_C = " << ideal_text(report.t_controller) << "\n";
  out << "t_P * t_C = " << ideal_text(report.product) << "\n";
  out << "t_H = " << ideal_text(report.t_closed_loop) << "\n";
  out << "relation: "
      << (report.iso.verdict == IsoVerdict::Isomorphic ? "isomorphic"
                                                       : "inconclusive")
      << " (" << report.iso.detail << ")\n";
  return out.str();
}

}  // namespace ringstab
