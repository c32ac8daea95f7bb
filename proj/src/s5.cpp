#include "preflog/s5.hpp"

#include <algorithm>
#include <bit>
#include <sstream>

#include "preflog/syntactic.hpp"

namespace preflog {

GroundS5::GroundS5(Signature sig, int bound) : sig_(std::move(sig)) {
  int n = static_cast<int>(sig_.atoms().size());
  if (n > bound || n > 4)
    throw BoundExceeded("enumeration bound exceeded: " + std::to_string(n) +
                        " atoms (bound " + std::to_string(std::min(bound, 4)) + ")");
  models_.reserve(full_mask());
  for (uint32_t mask = 1; mask <= full_mask(); ++mask) models_.push_back({mask});
}

bool GroundS5::world_sat(WorldId w, const Formula& f) const {
  switch (f.op()) {
    case Op::Atom: {
      int i = sig_.atom_index(f.name());
      if (i < 0) throw std::invalid_argument("unknown atom: " + f.name());
      return (w >> (num_atoms() - 1 - i)) & 1u;
    }
    case Op::Top: return true;
    case Op::Bot: return false;
    case Op::Not: return !world_sat(w, f.child(0));
    case Op::And: return world_sat(w, f.child(0)) && world_sat(w, f.child(1));
    case Op::Or: return world_sat(w, f.child(0)) || world_sat(w, f.child(1));
    case Op::Implies: return !world_sat(w, f.child(0)) || world_sat(w, f.child(1));
    default:
      throw std::invalid_argument("not a propositional formula");
  }
}

bool GroundS5::sat(const S5Model& m, WorldId world, const Formula& f) const {
  if (!((m.mask >> world) & 1u))
    throw std::invalid_argument("world is not in the model");
  switch (f.op()) {
    case Op::Atom:
    case Op::Top:
    case Op::Bot:
      return world_sat(world, f);
    case Op::Not: return !sat(m, world, f.child(0));
    case Op::And: return sat(m, world, f.child(0)) && sat(m, world, f.child(1));
    case Op::Or: return sat(m, world, f.child(0)) || sat(m, world, f.child(1));
    case Op::Implies:
      return !sat(m, world, f.child(0)) || sat(m, world, f.child(1));
    case Op::Know:
      for (int w = 0; w < num_worlds(); ++w)
        if (((m.mask >> w) & 1u) && !sat(m, w, f.child(0))) return false;
      return true;
    case Op::Maybe:  // M = ~K~
      for (int w = 0; w < num_worlds(); ++w)
        if (((m.mask >> w) & 1u) && sat(m, w, f.child(0))) return true;
      return false;
    default:
      throw std::invalid_argument("not an S5 formula");
  }
}

bool GroundS5::sat(const S5Model& m, const Formula& f) const {
  if (m.mask == 0) throw std::invalid_argument("S5 models are non-empty");
  return sat(m, static_cast<WorldId>(std::countr_zero(m.mask)), f);
}

std::vector<uint8_t> GroundS5::sat_table(const Formula& f) const {
  std::vector<uint8_t> t(full_mask() + 1u, 0);
  for (const S5Model& m : models_) t[m.mask] = sat(m, f);
  return t;
}

// Superset-reachability: out[mask] = 1 iff some strict superset of mask is
// set in `in`. Standard subset-sum sweep over the world bits.
std::vector<uint8_t> GroundS5::strict_superset_reach(const std::vector<uint8_t>& in) const {
  std::vector<uint8_t> any = in;  // any[mask] = some superset (incl. itself)
  for (int b = 0; b < num_worlds(); ++b)
    for (uint32_t mask = 0; mask <= full_mask(); ++mask)
      if (!((mask >> b) & 1u)) any[mask] |= any[mask | (1u << b)];
  std::vector<uint8_t> strict(full_mask() + 1u, 0);
  for (uint32_t mask = 0; mask <= full_mask(); ++mask)
    for (int b = 0; b < num_worlds() && !strict[mask]; ++b)
      if (!((mask >> b) & 1u)) strict[mask] |= any[mask | (1u << b)];
  return strict;
}

std::vector<S5Model> GroundS5::minimal_models(const Formula& alpha) const {
  require_subjective(alpha);
  std::vector<uint8_t> sat_t = sat_table(alpha);
  std::vector<uint8_t> bigger = strict_superset_reach(sat_t);
  std::vector<S5Model> out;
  for (const S5Model& m : models_)
    if (sat_t[m.mask] && !bigger[m.mask]) out.push_back(m);
  return out;
}

bool GroundS5::entails(const Formula& alpha, const Formula& beta) const {
  require_subjective(alpha);
  require_subjective(beta);
  for (const S5Model& m : minimal_models(alpha))
    if (!sat(m, beta)) return false;
  return true;
}

bool GroundS5::entails_classical(const Formula& alpha, const Formula& beta) const {
  require_subjective(alpha);
  require_subjective(beta);
  for (const S5Model& m : models_)
    if (sat(m, alpha) && !sat(m, beta)) return false;
  return true;
}

bool GroundS5::honest(const Formula& alpha) const {
  return minimal_models(alpha).size() == 1;
}

bool GroundS5::smooth(const std::vector<Formula>& sample) const {
  for (const Formula& alpha : sample) {
    std::vector<uint8_t> sat_t = sat_table(alpha);
    std::vector<uint8_t> bigger = strict_superset_reach(sat_t);
    std::vector<uint8_t> min_t(full_mask() + 1u, 0);
    for (uint32_t mask = 1; mask <= full_mask(); ++mask)
      min_t[mask] = sat_t[mask] && !bigger[mask];
    // minimal-above reachability: some N ⊇ m that is a minimal model
    std::vector<uint8_t> any = min_t;
    for (int b = 0; b < num_worlds(); ++b)
      for (uint32_t mask = 0; mask <= full_mask(); ++mask)
        if (!((mask >> b) & 1u)) any[mask] |= any[mask | (1u << b)];
    for (uint32_t mask = 1; mask <= full_mask(); ++mask)
      if (sat_t[mask] && !any[mask]) return false;
  }
  return true;
}

Formula GroundS5::valuation_formula(WorldId w) const {
  std::vector<Formula> lits;
  for (int i = 0; i < num_atoms(); ++i) {
    Formula a = atom(sig_.atoms()[i]);
    lits.push_back(((w >> (num_atoms() - 1 - i)) & 1u) ? a : lnot(a));
  }
  return conj(lits);
}

Formula GroundS5::preference_witness(const S5Model& m) const {
  // phi_M = AND{ K(~alpha_w) | w not in M }; empty conjunction is T.
  std::vector<Formula> parts;
  for (int w = 0; w < num_worlds(); ++w)
    if (!((m.mask >> w) & 1u)) parts.push_back(know(lnot(valuation_formula(w))));
  return conj(parts);
}

Formula GroundS5::point_formula(const S5Model& m) const {
  // Knows exactly the disjunction of its worlds and considers each possible.
  std::vector<Formula> worlds;
  std::vector<Formula> possible;
  for (int w = 0; w < num_worlds(); ++w)
    if ((m.mask >> w) & 1u) {
      worlds.push_back(valuation_formula(w));
      possible.push_back(maybe(valuation_formula(w)));
    }
  return land(know(disj(worlds)), conj(possible));
}

std::string GroundS5::serialize(const S5Model& m) const {
  std::ostringstream out;
  bool first = true;
  for (int w = 0; w < num_worlds(); ++w) {
    if (!((m.mask >> w) & 1u)) continue;
    if (!first) out << ',';
    first = false;
    for (int i = 0; i < num_atoms(); ++i)
      out << (((w >> (num_atoms() - 1 - i)) & 1u) ? '1' : '0');
  }
  return out.str();
}

S5Model GroundS5::parse_model(const std::string& s) const {
  S5Model m;
  size_t i = 0;
  while (i < s.size()) {
    uint32_t w = 0;
    int bits = 0;
    while (i < s.size() && (s[i] == '0' || s[i] == '1')) {
      w = (w << 1) | static_cast<uint32_t>(s[i] - '0');
      ++bits;
      ++i;
    }
    if (bits != num_atoms())
      throw std::invalid_argument("valuation bit-string needs " +
                                  std::to_string(num_atoms()) + " bits: " + s);
    m.mask |= 1u << w;
    if (i < s.size()) {
      if (s[i] != ',') throw std::invalid_argument("bad model syntax: " + s);
      ++i;
    }
  }
  if (m.mask == 0) throw std::invalid_argument("S5 models are non-empty");
  return m;
}

void GroundS5::require_subjective(const Formula& f) const {
  check_well_formed(f, sig_, Lang::S5);
  if (!is_subjective(f))
    throw std::invalid_argument("Ground S5 is defined over subjective formulae: " +
                                to_string(f));
}

}  // namespace preflog
