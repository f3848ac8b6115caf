#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace palfkit {

using BigInt = mpz_class;

// Exact rational with reduced representation and positive denominator.
// Thin wrapper over mpq_class; canonicalization is enforced on every
// construction path so num()/den() always satisfy gcd = 1, den > 0.
class Rational {
public:
    Rational() : q_(0) {}
    Rational(long n) : q_(n) {}
    Rational(const BigInt& n) : q_(n) {}
    Rational(const BigInt& num, const BigInt& den) : q_(num, den) {
        if (den == 0) throw std::domain_error("Rational: zero denominator");
        q_.canonicalize();
    }
    Rational(long num, long den) : Rational(BigInt(num), BigInt(den)) {}

    BigInt num() const { return q_.get_num(); }
    BigInt den() const { return q_.get_den(); }

    bool is_zero() const { return q_ == 0; }
    bool is_integer() const { return q_.get_den() == 1; }

    Rational operator+(const Rational& o) const { return Rational(q_ + o.q_); }
    Rational operator-(const Rational& o) const { return Rational(q_ - o.q_); }
    Rational operator*(const Rational& o) const { return Rational(q_ * o.q_); }
    Rational operator/(const Rational& o) const {
        if (o.is_zero()) throw std::domain_error("Rational: division by zero");
        return Rational(q_ / o.q_);
    }
    Rational operator-() const { return Rational(-q_); }

    Rational reciprocal() const {
        if (is_zero()) throw std::domain_error("Rational: reciprocal of zero");
        return Rational(1 / q_);
    }

    bool operator==(const Rational& o) const { return q_ == o.q_; }
    bool operator!=(const Rational& o) const { return q_ != o.q_; }
    bool operator<(const Rational& o) const { return q_ < o.q_; }
    bool operator<=(const Rational& o) const { return q_ <= o.q_; }
    bool operator>(const Rational& o) const { return q_ > o.q_; }
    bool operator>=(const Rational& o) const { return q_ >= o.q_; }

    // Least integer >= value.
    BigInt ceil() const {
        BigInt c;
        mpz_cdiv_q(c.get_mpz_t(), q_.get_num().get_mpz_t(), q_.get_den().get_mpz_t());
        return c;
    }

    std::string str() const {
        if (is_integer()) return q_.get_num().get_str();
        return q_.get_num().get_str() + "/" + q_.get_den().get_str();
    }

private:
    explicit Rational(const mpq_class& q) : q_(q) { q_.canonicalize(); }
    mpq_class q_;
};

}  // namespace palfkit
