#pragma once

#include "ahres/ratfunc.hpp"

#include <vector>

namespace ahres {

// Polynomial in the central symbol L (the boundary Laplacian slot) with
// RatFunc coefficients.  L commutes with everything here, so products are
// plain convolutions.  coefficient(0) multiplies the identity.
class BoundaryOp {
  public:
    BoundaryOp() = default;
    BoundaryOp(RatFunc c) { c_.push_back(std::move(c)); trim(); }
    BoundaryOp(int c) : BoundaryOp(RatFunc(c)) {}
    explicit BoundaryOp(std::vector<RatFunc> c) : c_(std::move(c)) { trim(); }

    static BoundaryOp identity() { return BoundaryOp(RatFunc(1)); }
    static BoundaryOp L() { return BoundaryOp(std::vector<RatFunc>{RatFunc(0), RatFunc(1)}); }

    // Degree in L; zero operator has degree -1.
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    RatFunc coefficient(int k) const {
        if (k < 0 || k >= static_cast<int>(c_.size())) return RatFunc(0);
        return c_[k];
    }

    friend BoundaryOp operator+(const BoundaryOp& a, const BoundaryOp& b) {
        std::vector<RatFunc> r(std::max(a.c_.size(), b.c_.size()));
        for (size_t i = 0; i < r.size(); ++i) {
            if (i < a.c_.size()) r[i] += a.c_[i];
            if (i < b.c_.size()) r[i] += b.c_[i];
        }
        return BoundaryOp(std::move(r));
    }
    friend BoundaryOp operator-(const BoundaryOp& a, const BoundaryOp& b) {
        std::vector<RatFunc> r(std::max(a.c_.size(), b.c_.size()));
        for (size_t i = 0; i < r.size(); ++i) {
            if (i < a.c_.size()) r[i] += a.c_[i];
            if (i < b.c_.size()) r[i] -= b.c_[i];
        }
        return BoundaryOp(std::move(r));
    }
    BoundaryOp operator-() const {
        std::vector<RatFunc> r(c_);
        for (auto& x : r) x = -x;
        return BoundaryOp(std::move(r));
    }
    friend BoundaryOp operator*(const BoundaryOp& a, const BoundaryOp& b) {
        if (a.is_zero() || b.is_zero()) return BoundaryOp();
        std::vector<RatFunc> r(a.c_.size() + b.c_.size() - 1);
        for (size_t i = 0; i < a.c_.size(); ++i)
            for (size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
        return BoundaryOp(std::move(r));
    }
    friend BoundaryOp operator*(const RatFunc& s, const BoundaryOp& a) {
        std::vector<RatFunc> r(a.c_);
        for (auto& x : r) x *= s;
        return BoundaryOp(std::move(r));
    }
    BoundaryOp& operator+=(const BoundaryOp& b) { *this = *this + b; return *this; }
    BoundaryOp& operator-=(const BoundaryOp& b) { *this = *this - b; return *this; }

    // Scalar division, used by the order-by-order solve.
    friend BoundaryOp operator/(const BoundaryOp& a, const RatFunc& s) {
        std::vector<RatFunc> r(a.c_);
        for (auto& x : r) x /= s;
        return BoundaryOp(std::move(r));
    }

    friend bool operator==(const BoundaryOp& a, const BoundaryOp& b) { return a.c_ == b.c_; }
    friend bool operator!=(const BoundaryOp& a, const BoundaryOp& b) { return !(a == b); }

    // Per-coefficient residue at lambda0: exact coefficient of
    // (lambda-lambda0)^(-1).  Result has constant coefficients.
    BoundaryOp residue_at(const BigRat& lambda0) const {
        std::vector<RatFunc> r(c_.size());
        for (size_t i = 0; i < c_.size(); ++i)
            r[i] = RatFunc(laurent_coeff(c_[i], lambda0, 1));
        return BoundaryOp(std::move(r));
    }

    std::string to_string() const {
        if (is_zero()) return "0";
        std::string s;
        for (int k = 0; k <= degree(); ++k) {
            if (coefficient(k).is_zero()) continue;
            if (!s.empty()) s += " + ";
            s += "[" + coefficient(k).to_string() + "]";
            if (k >= 1) s += "*L";
            if (k >= 2) s += "^" + std::to_string(k);
        }
        return s.empty() ? "0" : s;
    }

  private:
    void trim() {
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    }
    std::vector<RatFunc> c_;
};

} // namespace ahres
