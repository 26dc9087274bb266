#pragma once

#include <cmath>
#include <cstdlib>
#include <sstream>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "perc/errors.hpp"

namespace perc {

// Polynomial in one variable with exact integer coefficients.
// Coefficients are stored lowest degree first and kept trimmed; the zero
// polynomial has an empty coefficient list.
class IntPoly {
public:
    IntPoly() = default;

    IntPoly(std::initializer_list<long> coeffs) {
        c_.assign(coeffs.begin(), coeffs.end());
        trim();
    }

    explicit IntPoly(std::vector<mpz_class> coeffs) : c_(std::move(coeffs)) { trim(); }

    static IntPoly constant(long v) { return IntPoly({v}); }
    static IntPoly variable() { return IntPoly({0, 1}); }

    bool is_zero() const { return c_.empty(); }
    int degree() const { return static_cast<int>(c_.size()) - 1; }

    const mpz_class& coeff(size_t i) const {
        static const mpz_class zero = 0;
        return i < c_.size() ? c_[i] : zero;
    }

    const std::vector<mpz_class>& coeffs() const { return c_; }

    friend IntPoly operator+(const IntPoly& a, const IntPoly& b) {
        std::vector<mpz_class> r(std::max(a.c_.size(), b.c_.size()));
        for (size_t i = 0; i < r.size(); ++i) r[i] = a.coeff(i) + b.coeff(i);
        return IntPoly(std::move(r));
    }

    friend IntPoly operator-(const IntPoly& a, const IntPoly& b) {
        std::vector<mpz_class> r(std::max(a.c_.size(), b.c_.size()));
        for (size_t i = 0; i < r.size(); ++i) r[i] = a.coeff(i) - b.coeff(i);
        return IntPoly(std::move(r));
    }

    IntPoly operator-() const {
        std::vector<mpz_class> r(c_.size());
        for (size_t i = 0; i < c_.size(); ++i) r[i] = -c_[i];
        return IntPoly(std::move(r));
    }

    friend IntPoly operator*(const IntPoly& a, const IntPoly& b) {
        if (a.is_zero() || b.is_zero()) return IntPoly();
        std::vector<mpz_class> r(a.c_.size() + b.c_.size() - 1);
        for (size_t i = 0; i < a.c_.size(); ++i)
            for (size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
        return IntPoly(std::move(r));
    }

    IntPoly pow(unsigned n) const {
        IntPoly result = constant(1);
        IntPoly base = *this;
        while (n > 0) {
            if (n & 1u) result = result * base;
            base = base * base;
            n >>= 1;
        }
        return result;
    }

    friend bool operator==(const IntPoly& a, const IntPoly& b) { return a.c_ == b.c_; }

    // Horner in double precision.
    double eval(double x) const {
        double acc = 0.0;
        for (size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i].get_d();
        return acc;
    }

    // Exact evaluation at a rational point.
    mpq_class eval_rat(const mpq_class& x) const {
        mpq_class acc = 0;
        for (size_t i = c_.size(); i-- > 0;) acc = acc * x + mpq_class(c_[i]);
        return acc;
    }

    mpz_class eval_int(const mpz_class& x) const {
        mpz_class acc = 0;
        for (size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
        return acc;
    }

    int sign_at(const mpq_class& x) const { return sgn(eval_rat(x)); }

    // Text form: integer coefficients lowest degree first, space separated.
    std::string to_string() const {
        if (c_.empty()) return "0";
        std::ostringstream os;
        for (size_t i = 0; i < c_.size(); ++i) {
            if (i) os << ' ';
            os << c_[i].get_str();
        }
        return os.str();
    }

    static IntPoly parse(const std::string& text) {
        std::istringstream is(text);
        std::vector<mpz_class> coeffs;
        std::string tok;
        while (is >> tok) {
            try {
                coeffs.emplace_back(tok);
            } catch (const std::invalid_argument&) {
                throw invalid_parameter("IntPoly::parse: bad coefficient '" + tok + "'");
            }
        }
        return IntPoly(std::move(coeffs));
    }

private:
    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }

    std::vector<mpz_class> c_;
};

// Exact rational with the value of a double (doubles are dyadic rationals).
inline mpq_class rat_from_double(double x) {
    mpq_class q;
    mpq_set_d(q.get_mpq_t(), x);
    return q;
}

// Interval (lo,hi) in [0,1] holding exactly one sign change of a target
// polynomial. Endpoints are exact rationals so sign tests stay exact.
struct RootBracket {
    mpq_class lo;
    mpq_class hi;
};

// Bisection for a simple pre-bracketed root: exact sign tests at dyadic
// midpoints, final answer within +/- tol of the true root.
inline double isolate_root(const IntPoly& poly, RootBracket bracket, double tol) {
    if (!(bracket.lo < bracket.hi))
        throw invalid_parameter("isolate_root: empty bracket");
    int slo = poly.sign_at(bracket.lo);
    int shi = poly.sign_at(bracket.hi);
    if (slo == 0) return bracket.lo.get_d();
    if (shi == 0) return bracket.hi.get_d();
    if (slo == shi)
        throw invalid_bracket("isolate_root: no sign change on bracket");
    const mpq_class width_goal = rat_from_double(tol);
    while (bracket.hi - bracket.lo > width_goal) {
        mpq_class mid = (bracket.lo + bracket.hi) / 2;
        const int smid = poly.sign_at(mid);
        if (smid == 0) return mid.get_d();
        if (smid == slo)
            bracket.lo = std::move(mid);
        else
            bracket.hi = std::move(mid);
    }
    return (mpq_class((bracket.lo + bracket.hi) / 2)).get_d();
}

inline double isolate_root(const IntPoly& poly, double lo, double hi, double tol) {
    return isolate_root(poly, RootBracket{rat_from_double(lo), rat_from_double(hi)}, tol);
}

} // namespace perc
