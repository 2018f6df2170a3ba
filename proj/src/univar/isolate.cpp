#include "dpo/univar/isolate.hpp"

#include <algorithm>

#include "dpo/error.hpp"
#include "dpo/univar/sturm.hpp"

namespace dpo {

Eliminant deflate(const UPoly& p) {
  if (p.is_zero()) throw InputError("cannot deflate the zero polynomial");
  Eliminant e;
  e.deflation = p.low_order();
  e.poly = p.shift_down(e.deflation).primitive_monic_sign();
  e.even_substitution = e.poly.degree() > 0 && e.poly.is_even();
  return e;
}

namespace {

// Smallest power of two strictly above every root modulus (Cauchy bound).
Scalar root_bound(const UPoly& p) {
  const Integer lead = abs(p.leading());
  Integer biggest = 0;
  for (std::size_t i = 0; i + 1 < p.coeffs().size(); ++i) biggest = std::max(biggest, Integer(abs(p.coeffs()[i])));
  Scalar cauchy = Scalar(1) + ratio(biggest, lead);
  Scalar b = 1;
  while (b <= cauchy) b *= 2;
  return b;
}

Scalar exact_relative_tolerance(double rel) {
  // half the requested tolerance absorbs the binary rounding of `rel`
  return scalar_from_double(rel) / 2;
}

// floor or ceil of sqrt(q) on a grid of 2^-bits
Scalar sqrt_bound(const Scalar& q, unsigned bits, bool upper) {
  if (q == 0) return Scalar(0);
  Integer scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 2, 2 * bits);
  // sqrt(n/d) = sqrt(n*d)/d
  Integer radicand = q.get_num() * q.get_den() * scale;
  Integer root;
  mpz_sqrt(root.get_mpz_t(), radicand.get_mpz_t());
  if (upper && root * root != radicand) root += 1;
  Integer den = q.get_den();
  mpz_mul_2exp(den.get_mpz_t(), den.get_mpz_t(), bits);
  Scalar r(root, den);
  r.canonicalize();
  return r;
}

struct Interval {
  Scalar lo;
  Scalar hi;
};

class Isolator {
 public:
  Isolator(const UPoly& p, const IsolationOptions& options)
      : sturm_(p), options_(options), tol_(exact_relative_tolerance(options.relative_width)) {}

  std::size_t count(const Scalar& lo, const Scalar& hi) const {
    return sturm_.count(Bound::at(lo), Bound::at(hi));
  }

  std::vector<Interval> isolate_positive() const {
    std::vector<Interval> out;
    const UPoly& sq = sturm_.squarefree();
    if (sq.is_constant()) return out;
    split(Scalar(0), root_bound(sq), out);
    return out;
  }

  // One bisection step on a count-1 interval (lo, hi].
  void bisect(Interval& iv) const {
    Scalar mid = (iv.lo + iv.hi) / 2;
    if (count(iv.lo, mid) == 1) {
      iv.hi = mid;
    } else {
      iv.lo = mid;
    }
    if (options_.verify_each_step && count(iv.lo, iv.hi) != 1)
      throw Error("bisection lost the isolated root");
  }

  // Makes (lo, hi) open-isolating: the root is not exactly at hi.
  void make_open(Interval& iv) const {
    const UPoly& sq = sturm_.squarefree();
    if (sq.sign_at(iv.hi) != 0) return;
    const Scalar root = iv.hi;
    Scalar delta = (iv.hi - iv.lo) / 4;
    while (count(root - delta, root + delta) != 1 || sq.sign_at(root + delta) == 0) delta /= 2;
    iv = {root - delta, root + delta};
  }

  bool narrow_enough(const Interval& iv) const {
    const Scalar scale = iv.lo > 1 ? iv.lo : Scalar(1);
    return iv.hi - iv.lo <= tol_ * scale;
  }

  void refine(Interval& iv) const {
    while (!narrow_enough(iv)) bisect(iv);
    make_open(iv);
  }

  const SturmSequence& sturm() const { return sturm_; }
  const Scalar& tolerance() const { return tol_; }

 private:
  void split(const Scalar& lo, const Scalar& hi, std::vector<Interval>& out) const {
    const std::size_t c = count(lo, hi);
    if (c == 0) return;
    if (c == 1) {
      out.push_back({lo, hi});
      return;
    }
    const Scalar mid = (lo + hi) / 2;
    split(lo, mid, out);
    split(mid, hi, out);
  }

  SturmSequence sturm_;
  IsolationOptions options_;
  Scalar tol_;
};

std::size_t multiplicity_in(const UPoly& p, const Scalar& lo, const Scalar& hi) {
  std::size_t m = 1;
  UPoly g = gcd(p, p.derivative());
  while (!g.is_constant() && sturm_count(g, Bound::at(lo), Bound::at(hi)) > 0) {
    ++m;
    g = gcd(g, g.derivative());
  }
  return m;
}

}  // namespace

std::vector<PeriodCertificate> isolate_positive_roots(const Eliminant& e,
                                                      const IsolationOptions& options) {
  std::vector<PeriodCertificate> out;
  if (e.poly.is_zero()) throw InputError("cannot isolate roots of the zero polynomial");
  if (e.poly.is_constant()) return out;
  const bool squarefree = squarefree_part(e.poly) == e.poly.primitive_monic_sign();

  if (!e.even_substitution) {
    Isolator iso(e.poly, options);
    for (auto iv : iso.isolate_positive()) {
      iso.refine(iv);
      if (iso.count(iv.lo, iv.hi) != 1) throw Error("certificate lost its root");
      PeriodCertificate c;
      c.lo = iv.lo;
      c.hi = iv.hi;
      c.value = Scalar((iv.lo + iv.hi) / 2).get_d();
      c.multiplicity = squarefree ? 1 : multiplicity_in(e.poly, iv.lo, iv.hi);
      out.push_back(std::move(c));
    }
    return out;
  }

  // Analyse q(S) with p(T) = q(T^2); positive roots correspond through S = T^2.
  const UPoly q = e.poly.even_to_square();
  Isolator iso(q, options);
  for (auto iv : iso.isolate_positive()) {
    unsigned bits = 96;
    for (;;) {
      iso.bisect(iv);
      if (q.sign_at(iv.hi) == 0) {
        // bisection landed on a rational root; if it is a square the T-root is exact
        const Scalar t = sqrt_bound(iv.hi, bits, false);
        if (t * t == iv.hi) {
          Scalar d = iso.tolerance() * (t > 1 ? t : Scalar(1)) / 4;
          while (iso.count((t - d) * (t - d), (t + d) * (t + d)) != 1) d /= 2;
          out.push_back({t - d, t + d, t.get_d(), 1,
                         squarefree ? 1 : multiplicity_in(e.poly, t - d, t + d)});
          break;
        }
      }
      Scalar lo_t = sqrt_bound(iv.lo, bits, false);
      Scalar hi_t = sqrt_bound(iv.hi, bits, true);
      const Scalar scale = lo_t > 1 ? lo_t : Scalar(1);
      if (hi_t - lo_t > iso.tolerance() * scale) continue;
      // (lo_t^2, hi_t^2] brackets the S-interval; it must still hold a single root
      // and that root must not sit on the upper end.
      if (iso.count(lo_t * lo_t, hi_t * hi_t) != 1 || q.sign_at(hi_t * hi_t) == 0) {
        bits += 32;
        continue;
      }
      PeriodCertificate c;
      c.lo = lo_t;
      c.hi = hi_t;
      c.value = Scalar((lo_t + hi_t) / 2).get_d();
      c.multiplicity = squarefree ? 1 : multiplicity_in(e.poly, lo_t, hi_t);
      out.push_back(std::move(c));
      break;
    }
  }
  return out;
}

}  // namespace dpo
