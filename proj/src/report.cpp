#include "zeta/report.hpp"

#include <iomanip>
#include <sstream>

namespace zeta::report {

namespace {

const Theta kBranches[] = {Theta::pi_4, Theta::three_pi_4};

const std::optional<SignCounts>& counts_for(const Defect2Row& row, Theta t) {
  return t == Theta::pi_4 ? row.counts_pi4 : row.counts_3pi4;
}

const char* selection_name(ThetaSelection s) {
  switch (s) {
    case ThetaSelection::pi_4: return "pi4";
    case ThetaSelection::three_pi_4: return "3pi4";
    case ThetaSelection::both: return "both";
  }
  return "?";
}

std::string claim_text(Claim c) { return to_string(c); }

}  // namespace

Json to_json(const BigRational& r) { return r.to_string(); }

Json to_json(const QuadExt& x) { return Json{{"rat", x.rat().to_string()}, {"irr", x.irr().to_string()}}; }

Json to_json(const std::vector<BigInt>& v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(x.get_str());
  return a;
}

Json claim_json(Claim c) {
  if (c == Claim::holds) return true;
  if (c == Claim::fails) return false;
  return to_string(c);
}

Json to_json(const Defect2Report& rep) {
  Json rows = Json::array();
  for (const auto& row : rep.rows) {
    Json plus = Json::object();
    Json minus = Json::object();
    Json delta = Json::object();
    for (Theta t : kBranches) {
      const auto& c = counts_for(row, t);
      if (!c) continue;
      plus[to_string(t)] = c->plus;
      minus[to_string(t)] = c->minus;
      delta[to_string(t)] = c->delta();
    }
    rows.push_back(Json{{"n", row.n},
                        {"a_pi4", row.a_pi4.get_str()},
                        {"a_3pi4", row.a_3pi4.get_str()},
                        {"p_plus", plus},
                        {"p_minus", minus},
                        {"delta", delta},
                        {"checks",
                         {{"prop45", row.symmetry},
                          {"prop46", claim_json(row.counts_claim)},
                          {"thm47", claim_json(row.sign_theorem)}}}});
  }
  const auto& th = rep.theorem;
  Json theorem = {{"mode", th.conjecture_mode ? "conjecture" : "proven"},
                  {"signs_pi4", claim_text(th.signs_pi4)},
                  {"signs_3pi4", claim_text(th.signs_3pi4)},
                  {"growth_weak", claim_text(th.growth_weak)},
                  {"growth_strict", claim_text(th.growth_strict)}};
  return Json{{"g", rep.g},
              {"max_n", rep.max_n},
              {"theta", selection_name(rep.selection)},
              {"rows", rows},
              {"summary",
               {{"methods_agree", rep.methods_agree},
                {"oracle_pi4", rep.oracle_match_pi4},
                {"oracle_3pi4", rep.oracle_match_3pi4},
                {"thm47", theorem}}}};
}

std::string to_csv(const Defect2Report& rep) {
  std::ostringstream out;
  out << "n,a_pi4,a_3pi4";
  for (Theta t : kBranches) {
    if (!selects(rep.selection, t)) continue;
    out << ",p_plus_" << to_string(t) << ",p_minus_" << to_string(t) << ",delta_" << to_string(t);
  }
  out << ",prop45,prop46,thm47\n";
  for (const auto& row : rep.rows) {
    out << row.n << ',' << row.a_pi4.get_str() << ',' << row.a_3pi4.get_str();
    for (Theta t : kBranches) {
      if (!selects(rep.selection, t)) continue;
      const auto& c = counts_for(row, t);
      out << ',' << c->plus << ',' << c->minus << ',' << c->delta();
    }
    out << ',' << (row.symmetry ? "holds" : "fails") << ',' << to_string(row.counts_claim) << ','
        << to_string(row.sign_theorem) << '\n';
  }
  return out.str();
}

std::string to_table(const Defect2Report& rep) {
  std::ostringstream out;
  out << "defect-2 case (a) over F_2, g=" << rep.g << ", n<=" << rep.max_n << "\n";
  out << std::setw(4) << "n" << std::setw(16) << "a_pi4" << std::setw(16) << "a_3pi4";
  for (Theta t : kBranches) {
    if (!selects(rep.selection, t)) continue;
    out << std::setw(20) << (std::string("P+/P- ") + to_string(t)) << std::setw(8) << "delta";
  }
  out << std::setw(8) << "sym" << std::setw(12) << "counts" << std::setw(12) << "signs" << "\n";
  for (const auto& row : rep.rows) {
    out << std::setw(4) << row.n << std::setw(16) << row.a_pi4.get_str() << std::setw(16) << row.a_3pi4.get_str();
    for (Theta t : kBranches) {
      if (!selects(rep.selection, t)) continue;
      const auto& c = counts_for(row, t);
      out << std::setw(20) << (std::to_string(c->plus) + "/" + std::to_string(c->minus)) << std::setw(8)
          << c->delta();
    }
    out << std::setw(8) << (row.symmetry ? "holds" : "fails") << std::setw(12) << to_string(row.counts_claim)
        << std::setw(12) << to_string(row.sign_theorem) << "\n";
  }
  const auto& th = rep.theorem;
  out << "methods agree: " << (rep.methods_agree ? "yes" : "NO") << "; oracle pi4: "
      << (rep.oracle_match_pi4 ? "match" : "MISMATCH") << "; oracle 3pi4: "
      << (rep.oracle_match_3pi4 ? "match" : "MISMATCH") << "\n";
  out << "sign theorem (" << (th.conjecture_mode ? "conjecture" : "proven") << " range): signs pi4 "
      << to_string(th.signs_pi4) << ", signs 3pi4 " << to_string(th.signs_3pi4) << ", growth weak "
      << to_string(th.growth_weak) << ", strict " << to_string(th.growth_strict) << "\n";
  return out.str();
}

}  // namespace zeta::report
