#pragma once

#include <valent/numeric.hpp>

#include <compare>
#include <stdexcept>
#include <string>

namespace valent {

/// A point of the value group together with +infinity (the valuation of 0).
/// Finite values are exact rationals; in p-adic mode they are integers.
class Val {
public:
    Val() : finite_(true), v_(0) {}
    Val(long v) : finite_(true), v_(v) {}
    Val(Rat v) : finite_(true), v_(std::move(v)) {}
    static Val infinity() {
        Val v;
        v.finite_ = false;
        return v;
    }

    bool is_infinite() const { return !finite_; }
    bool is_finite() const { return finite_; }

    const Rat& finite() const {
        if (!finite_) throw std::domain_error("valuation is infinite");
        return v_;
    }

    Val operator+(const Val& o) const {
        if (!finite_ || !o.finite_) return infinity();
        return Val(Rat(v_ + o.v_));
    }
    Val operator-() const {
        if (!finite_) throw std::domain_error("cannot negate an infinite valuation");
        return Val(Rat(-v_));
    }
    Val operator-(const Val& o) const { return *this + (-o); }

    friend bool operator==(const Val& a, const Val& b) {
        if (a.finite_ != b.finite_) return false;
        return !a.finite_ || a.v_ == b.v_;
    }
    friend bool operator!=(const Val& a, const Val& b) { return !(a == b); }
    friend bool operator<(const Val& a, const Val& b) {
        if (!a.finite_) return false;
        if (!b.finite_) return true;
        return a.v_ < b.v_;
    }
    friend bool operator<=(const Val& a, const Val& b) { return a == b || a < b; }
    friend bool operator>(const Val& a, const Val& b) { return b < a; }
    friend bool operator>=(const Val& a, const Val& b) { return b <= a; }

    friend const Val& min(const Val& a, const Val& b) { return b < a ? b : a; }
    friend const Val& max(const Val& a, const Val& b) { return a < b ? b : a; }

    std::string str() const { return finite_ ? v_.get_str() : "inf"; }

private:
    bool finite_;
    Rat v_;
};

}  // namespace valent
