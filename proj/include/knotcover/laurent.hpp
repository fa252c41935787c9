#pragma once

#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>

#include <boost/multiprecision/cpp_int.hpp>

namespace knotcover {

using BigInt = boost::multiprecision::cpp_int;

/// Laurent polynomial in one formal variable A with exact integer
/// coefficients. Zero coefficients are never stored.
class LaurentPoly {
public:
    LaurentPoly() = default;

    static LaurentPoly monomial(const BigInt& coeff, int exp) {
        LaurentPoly p;
        if (coeff != 0) p.terms_[exp] = coeff;
        return p;
    }
    static LaurentPoly one() { return monomial(1, 0); }

    /// d = -A^2 - A^{-2}, the loop value of the bracket state sum.
    static LaurentPoly loop_value() {
        LaurentPoly p;
        p.terms_[2] = -1;
        p.terms_[-2] = -1;
        return p;
    }

    bool is_zero() const { return terms_.empty(); }
    const std::map<int, BigInt>& terms() const { return terms_; }

    BigInt coeff(int exp) const {
        auto it = terms_.find(exp);
        return it == terms_.end() ? BigInt(0) : it->second;
    }

    void add_term(int exp, const BigInt& c) {
        if (c == 0) return;
        auto it = terms_.find(exp);
        if (it == terms_.end()) {
            terms_[exp] = c;
        } else {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    friend LaurentPoly operator+(const LaurentPoly& a, const LaurentPoly& b) {
        LaurentPoly r = a;
        for (const auto& [e, c] : b.terms_) r.add_term(e, c);
        return r;
    }
    friend LaurentPoly operator-(const LaurentPoly& a, const LaurentPoly& b) {
        LaurentPoly r = a;
        for (const auto& [e, c] : b.terms_) r.add_term(e, -c);
        return r;
    }
    friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
        LaurentPoly r;
        for (const auto& [ea, ca] : a.terms_)
            for (const auto& [eb, cb] : b.terms_) r.add_term(ea + eb, ca * cb);
        return r;
    }
    LaurentPoly operator-() const {
        LaurentPoly r;
        for (const auto& [e, c] : terms_) r.terms_[e] = -c;
        return r;
    }

    LaurentPoly shifted(int dexp) const {
        LaurentPoly r;
        for (const auto& [e, c] : terms_) r.terms_[e + dexp] = c;
        return r;
    }

    LaurentPoly pow(int n) const {
        LaurentPoly r = one();
        for (int i = 0; i < n; ++i) r = r * (*this);
        return r;
    }

    /// Substitute A -> A^{-1} (mirror image of the underlying diagram).
    LaurentPoly mirrored() const {
        LaurentPoly r;
        for (const auto& [e, c] : terms_) r.terms_[-e] = c;
        return r;
    }

    friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) {
        return a.terms_ == b.terms_;
    }
    friend bool operator!=(const LaurentPoly& a, const LaurentPoly& b) {
        return !(a == b);
    }

    /// Render as e.g. "-A^5 - A^-3 + A^-7", descending exponents.
    std::string str(const std::string& var = "A") const {
        if (terms_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
            BigInt c = it->second;
            if (first) {
                if (c < 0) { os << "-"; c = -c; }
            } else {
                os << (c < 0 ? " - " : " + ");
                if (c < 0) c = -c;
            }
            first = false;
            int e = it->first;
            if (e == 0) {
                os << c;
            } else {
                if (c != 1) os << c << "*";
                os << var;
                if (e != 1) os << "^" << e;
            }
        }
        return os.str();
    }
    friend std::ostream& operator<<(std::ostream& os, const LaurentPoly& p) {
        return os << p.str();
    }

private:
    std::map<int, BigInt> terms_;
};

}  // namespace knotcover
