#pragma once

#include "hforge/rational.hpp"

#include <map>
#include <string>
#include <utility>

namespace hforge {

/// Exact bivariate Laurent polynomial: sum of coef * x^i * y^j with integer
/// exponents (negative allowed).  Just enough algebra to combine tangent
/// fields and their partials into determining-equation residuals.
class LaurentPoly2 {
  public:
    using Key = std::pair<int, int>;  // (x exponent, y exponent)

    LaurentPoly2() = default;

    static LaurentPoly2 term(const Rat& c, int xe, int ye) {
        LaurentPoly2 p;
        p.add_term(c, xe, ye);
        return p;
    }

    void add_term(const Rat& c, int xe, int ye) {
        if (c.is_zero()) return;
        auto it = terms_.find({xe, ye});
        if (it == terms_.end()) {
            terms_.emplace(Key{xe, ye}, c);
        } else {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    bool is_zero() const { return terms_.empty(); }

    friend LaurentPoly2 operator+(const LaurentPoly2& a, const LaurentPoly2& b) {
        LaurentPoly2 out = a;
        for (const auto& [k, c] : b.terms_) out.add_term(c, k.first, k.second);
        return out;
    }
    friend LaurentPoly2 operator-(const LaurentPoly2& a, const LaurentPoly2& b) {
        LaurentPoly2 out = a;
        for (const auto& [k, c] : b.terms_) out.add_term(Rat(-c), k.first, k.second);
        return out;
    }
    friend LaurentPoly2 operator*(const LaurentPoly2& a, const LaurentPoly2& b) {
        LaurentPoly2 out;
        for (const auto& [ka, ca] : a.terms_)
            for (const auto& [kb, cb] : b.terms_)
                out.add_term(Rat(ca * cb), ka.first + kb.first, ka.second + kb.second);
        return out;
    }

    LaurentPoly2 dx() const {
        LaurentPoly2 out;
        for (const auto& [k, c] : terms_)
            if (k.first != 0) out.add_term(Rat(c * k.first), k.first - 1, k.second);
        return out;
    }
    LaurentPoly2 dy() const {
        LaurentPoly2 out;
        for (const auto& [k, c] : terms_)
            if (k.second != 0) out.add_term(Rat(c * k.second), k.first, k.second - 1);
        return out;
    }

    Rat eval(const Rat& x, const Rat& y) const {
        Rat acc(0);
        for (const auto& [k, c] : terms_) acc += c * pow_rat(x, k.first) * pow_rat(y, k.second);
        return acc;
    }
    double eval(double x, double y) const {
        double acc = 0;
        for (const auto& [k, c] : terms_)
            acc += to_double(c) * std::pow(x, k.first) * std::pow(y, k.second);
        return acc;
    }

    const std::map<Key, Rat>& terms() const { return terms_; }

  private:
    std::map<Key, Rat> terms_;
};

}  // namespace hforge
