#pragma once

#include <map>
#include <sstream>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace khst {

using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

/// Laurent polynomial in q with integer coefficients. Zero coefficients are
/// never stored.
class Laurent {
  public:
    Laurent() = default;
    Laurent(BigInt c, int exponent) {
        if (c != 0) coeffs_[exponent] = std::move(c);
    }
    static Laurent one() { return Laurent(1, 0); }
    static Laurent q(int exponent = 1) { return Laurent(1, exponent); }

    const std::map<int, BigInt>& coeffs() const { return coeffs_; }
    bool is_zero() const { return coeffs_.empty(); }

    BigInt coeff(int exponent) const {
        auto it = coeffs_.find(exponent);
        return it == coeffs_.end() ? BigInt(0) : it->second;
    }

    Laurent& operator+=(const Laurent& other) {
        for (const auto& [e, c] : other.coeffs_) add_term(c, e);
        return *this;
    }
    Laurent& operator-=(const Laurent& other) {
        for (const auto& [e, c] : other.coeffs_) add_term(-c, e);
        return *this;
    }
    friend Laurent operator+(Laurent a, const Laurent& b) { return a += b; }
    friend Laurent operator-(Laurent a, const Laurent& b) { return a -= b; }

    friend Laurent operator*(const Laurent& a, const Laurent& b) {
        Laurent r;
        for (const auto& [ea, ca] : a.coeffs_)
            for (const auto& [eb, cb] : b.coeffs_) r.add_term(ca * cb, ea + eb);
        return r;
    }
    Laurent& operator*=(const Laurent& other) { return *this = *this * other; }

    friend bool operator==(const Laurent& a, const Laurent& b) { return a.coeffs_ == b.coeffs_; }
    friend bool operator!=(const Laurent& a, const Laurent& b) { return !(a == b); }

    Laurent pow(int n) const {
        Laurent r = one();
        for (int k = 0; k < n; ++k) r *= *this;
        return r;
    }

    /// Substitute q -> q^-1.
    Laurent mirror() const {
        Laurent r;
        for (const auto& [e, c] : coeffs_) r.add_term(c, -e);
        return r;
    }

    BigInt eval_at_one() const {
        BigInt s = 0;
        for (const auto& [e, c] : coeffs_) s += c;
        return s;
    }

    void add_term(const BigInt& c, int exponent) {
        if (c == 0) return;
        auto it = coeffs_.find(exponent);
        if (it == coeffs_.end()) {
            coeffs_[exponent] = c;
        } else {
            it->second += c;
            if (it->second == 0) coeffs_.erase(it);
        }
    }

    std::string str() const {
        if (coeffs_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (const auto& [e, c] : coeffs_) {
            BigInt a = c;
            if (first) {
                if (a < 0) { os << "-"; a = -a; }
            } else {
                os << (a < 0 ? " - " : " + ");
                if (a < 0) a = -a;
            }
            first = false;
            if (a != 1 || e == 0) os << a.str();
            if (e != 0) {
                if (a != 1) os << "*";
                os << "q";
                if (e != 1) os << "^" << e;
            }
        }
        return os.str();
    }

  private:
    std::map<int, BigInt> coeffs_;
};

} // namespace khst
