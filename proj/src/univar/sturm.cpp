#include "dpo/univar/sturm.hpp"

#include "dpo/error.hpp"

namespace dpo {

SturmSequence::SturmSequence(const UPoly& p) {
  if (p.is_zero()) throw InputError("Sturm sequence of the zero polynomial");
  seq_.push_back(squarefree_part(p));
  if (seq_.front().is_constant()) return;
  seq_.push_back(seq_.front().derivative().primitive());
  while (!seq_.back().is_constant()) {
    const UPoly& prev = seq_[seq_.size() - 2];
    const UPoly& cur = seq_.back();
    UPoly r = pseudo_remainder(prev, cur);
    if (r.is_zero()) break;  // cannot happen for a squarefree head
    const int e = prev.degree() - cur.degree() + 1;
    const bool multiplier_negative = cur.leading() < 0 && (e % 2 == 1);
    // next = -(true remainder), scaled by a positive factor
    UPoly next = multiplier_negative ? r.primitive() : (-r).primitive();
    seq_.push_back(std::move(next));
  }
}

std::size_t SturmSequence::variations(const Bound& x) const {
  std::size_t changes = 0;
  int last = 0;
  for (const auto& s : seq_) {
    int sign = 0;
    switch (x.kind) {
      case Bound::Kind::PosInf: sign = sgn(s.leading()); break;
      case Bound::Kind::NegInf: sign = sgn(s.leading()) * ((s.degree() % 2 == 0) ? 1 : -1); break;
      case Bound::Kind::Finite: sign = s.sign_at(x.value); break;
    }
    if (sign == 0) continue;
    if (last != 0 && sign != last) ++changes;
    last = sign;
  }
  return changes;
}

std::size_t SturmSequence::count(const Bound& a, const Bound& b) const {
  const std::size_t va = variations(a);
  const std::size_t vb = variations(b);
  if (vb > va) throw InputError("Sturm count requires a < b");
  return va - vb;
}

std::size_t sturm_count(const UPoly& p, const Bound& a, const Bound& b) {
  return SturmSequence(p).count(a, b);
}

}  // namespace dpo
