#ifndef GBS_ARITH_HPP
#define GBS_ARITH_HPP

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "gbs/decision.hpp"

namespace gbs {

// Exact arithmetic over a fixed prime basis. Labels and moduli live as
// sign * unit * prod(p_l^e_l); the unit carries every prime factor outside
// the basis and is invariant under slide moves, so divisibility questions
// reduce to componentwise exponent comparisons plus a unit check.

struct PrimeBasis {
    std::vector<long long> primes;  // strictly increasing, all prime

    std::size_t size() const { return primes.size(); }
    bool operator==(const PrimeBasis& o) const { return primes == o.primes; }
    std::optional<std::size_t> index_of(long long p) const;
    void validate() const;
};

using BasisPtr = std::shared_ptr<const PrimeBasis>;

// Basis closed over a problem instance: every prime dividing any of the
// given values appears. Values of two graphs can be concatenated to build
// the joint basis for an isomorphism query.
BasisPtr basis_from_values(const std::vector<long long>& values);

// 64-bit factorization utilities (deterministic Miller-Rabin + Pollard rho).
bool is_prime_u64(unsigned long long n);
std::vector<long long> prime_factors(long long n);  // distinct, sorted

struct FactoredInt {
    int sign = 1;              // +1 or -1
    long long unit = 1;        // positive, coprime to every basis prime
    std::vector<long long> exps;  // non-negative, one per basis prime
    BasisPtr basis;

    long long value() const;      // throws Overflow if it does not fit int64
    long long abs_value() const;
    bool is_unit_abs() const;     // |value| == 1
    bool same_basis(const FactoredInt& o) const;
    FactoredInt abs() const;
    bool operator==(const FactoredInt& o) const;
};

// Exact factorization of n over the basis. Exponents are the p-adic
// valuations for basis primes; whatever remains goes to the unit.
FactoredInt factor(long long n, BasisPtr basis);

// a | b over the integers. The positive-label regime ignores signs (the
// default); with ignore_sign = false the quotient must also be positive.
bool divides(const FactoredInt& a, const FactoredInt& b, bool ignore_sign = true);

struct FactoredRational {
    int sign = 1;
    long long unit_num = 1;  // positive, coprime to unit_den and the basis
    long long unit_den = 1;
    std::vector<long long> exps;  // signed, one per basis prime
    BasisPtr basis;

    static FactoredRational one(BasisPtr basis);
    static FactoredRational ratio(const FactoredInt& num, const FactoredInt& den);

    FactoredRational times(const FactoredRational& o) const;
    FactoredRational inverse() const;
    bool is_integer() const;      // unit_den == 1 and all exponents >= 0
    bool is_unit_abs() const;     // |value| == 1
    FactoredInt to_integer() const;
    // (numerator, denominator) in lowest terms; throws Overflow when large.
    std::pair<long long, long long> value_pair() const;
    std::string to_string() const;
    bool operator==(const FactoredRational& o) const;
};

// ---------------------------------------------------------------------------
// Integer linear algebra.

struct LinearRow {
    enum Rel { GE, EQ };
    std::vector<long long> coeffs;
    long long rhs = 0;
    Rel rel = GE;
};

// Rows encode sum_j coeffs[j] * x_j  (>= | ==)  rhs.
struct LinearConstraintSystem {
    int dim = 0;
    std::vector<LinearRow> rows;
    std::optional<long long> box;  // per-variable bound for branch-and-bound

    void validate() const;  // every row has exactly dim coefficients
};

// Exact solver for A y = b via integer diagonalization (Smith form style
// elimination). Never inconclusive: Yes carries a witness, No is a proof.
Decision<std::vector<long long>> solve_integer_linear(
    const std::vector<std::vector<long long>>& A, const std::vector<long long>& b);

// Lattice-point feasibility. Exact for dim <= 2 (equation substitution,
// interval logic and a sweep bounded by the von zur Gathen-Sieveking bound);
// branch-and-bound within a box for dim >= 3, which may be inconclusive.
Decision<std::vector<long long>> ilp_feasible(const LinearConstraintSystem& sys,
                                              const SearchBudget& budget = {});

// Row-style Hermite normal form of the lattice spanned by the given rows;
// used to compare multiplicative subgroups via their exponent lattices.
std::vector<std::vector<long long>> hermite_normal_form(
    std::vector<std::vector<long long>> rows);

bool lattices_equal(const std::vector<std::vector<long long>>& a,
                    const std::vector<std::vector<long long>>& b);

}  // namespace gbs

#endif
