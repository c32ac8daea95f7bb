#include "preflog/persistence.hpp"

#include <algorithm>
#include <map>

namespace preflog {

namespace {

// Smallest propositional formula per semantic class (valuation mask),
// grown to fixpoint from literals and constants.
std::vector<Formula> propositional_representatives(const GroundS5& s5,
                                                   size_t size_bound) {
  std::map<uint32_t, Formula> bymask;
  auto offer = [&](uint32_t mask, const Formula& f) {
    if (f.size() > size_bound) return false;
    auto it = bymask.find(mask);
    if (it == bymask.end()) {
      bymask.emplace(mask, f);
      return true;
    }
    if (f.size() < it->second.size() ||
        (f.size() == it->second.size() && f < it->second)) {
      it->second = f;
    }
    return false;
  };
  auto mask_of = [&](const Formula& f) {
    uint32_t m = 0;
    for (int w = 0; w < s5.num_worlds(); ++w)
      if (s5.world_sat(w, f)) m |= 1u << w;
    return m;
  };

  offer(s5.full_mask(), top());
  offer(0, bot());
  for (const std::string& a : s5.sig().atoms()) {
    offer(mask_of(atom(a)), atom(a));
    offer(mask_of(lnot(atom(a))), lnot(atom(a)));
  }
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<std::pair<uint32_t, Formula>> snap(bymask.begin(), bymask.end());
    for (const auto& [ma, fa] : snap) {
      grew |= offer(~ma & s5.full_mask(), lnot(fa));
      for (const auto& [mb, fb] : snap) {
        grew |= offer(ma & mb, land(fa, fb));
        grew |= offer(ma | mb, lor(fa, fb));
      }
    }
  }
  std::vector<Formula> out;
  for (const auto& [m, f] : bymask) out.push_back(f);
  std::sort(out.begin(), out.end(),
            [](const Formula& a, const Formula& b) {
              if (a.size() != b.size()) return a.size() < b.size();
              return a < b;
            });
  return out;
}

}  // namespace

template <PreferentialLogicT L>
std::optional<Formula> bounded_completeness_search(const L& logic, const Formula& f,
                                                   SyntacticClass cls,
                                                   size_t size_bound) {
  bool temporal;
  Op modal;
  switch (cls) {
    case SyntacticClass::Diam: temporal = false; modal = Op::Maybe; break;
    case SyntacticClass::Box: temporal = false; modal = Op::Know; break;
    case SyntacticClass::Td: temporal = true; modal = Op::Maybe; break;
    case SyntacticClass::Tb: temporal = true; modal = Op::Know; break;
    default:
      throw std::invalid_argument("bounded search supports Diam/Box/Td/Tb only");
  }

  const auto& ms = logic.models();
  auto truth_vec = [&](const Formula& g) {
    std::vector<uint8_t> v(ms.size());
    for (size_t i = 0; i < ms.size(); ++i) v[i] = logic.sat(ms[i], g);
    return v;
  };
  std::vector<uint8_t> target = truth_vec(f);

  GroundS5 s5(logic.signature(), 4);
  std::vector<Formula> props =
      propositional_representatives(s5, size_bound > 1 ? size_bound - 1 : 0);

  constexpr size_t kMemberCap = 4000;
  std::map<std::vector<uint8_t>, Formula> members;  // semantics -> smallest member
  std::vector<Formula> worklist;
  auto offer = [&](const Formula& g) {
    if (g.size() > size_bound || members.size() >= kMemberCap) return;
    std::vector<uint8_t> v = truth_vec(g);
    auto it = members.find(v);
    if (it == members.end()) {
      members.emplace(std::move(v), g);
      worklist.push_back(g);
    } else if (g.size() < it->second.size()) {
      it->second = g;
    }
  };

  auto mk = [&](Op op, const Formula& a) { return Formula::make(op, {a}); };
  for (const Formula& p : props) offer(mk(modal, p));

  // close under the grammar productions, breadth-first over discoveries
  for (size_t next = 0; next < worklist.size(); ++next) {
    Formula g = worklist[next];
    // M(DIAM) / K(BOX) applies to the temporal-free members only
    if (temporal_depth(g) == 0) offer(mk(modal, g));
    if (temporal) {
      offer(past(g));
      offer(future(g));
      offer(hist(g));
      offer(glob(g));
    }
    for (size_t j = 0; j <= next && j < worklist.size(); ++j) {
      offer(land(g, worklist[j]));
      offer(lor(g, worklist[j]));
      if (j != next) {
        offer(land(worklist[j], g));
        offer(lor(worklist[j], g));
      }
    }
  }

  auto hit = members.find(target);
  if (hit == members.end()) return std::nullopt;
  return hit->second;
}

template std::optional<Formula> bounded_completeness_search<GroundS5Logic>(
    const GroundS5Logic&, const Formula&, SyntacticClass, size_t);
template std::optional<Formula> bounded_completeness_search<MtelLogic>(
    const MtelLogic&, const Formula&, SyntacticClass, size_t);
template std::optional<Formula> bounded_completeness_search<FinCircLogic>(
    const FinCircLogic&, const Formula&, SyntacticClass, size_t);

}  // namespace preflog
