#include "gbs/arith.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>
#include <tuple>

namespace gbs {

namespace {

using u64 = unsigned long long;
using u128 = __uint128_t;
using i128 = __int128_t;

long long checked_ll(i128 v, const char* what) {
    if (v > (i128)INT64_MAX || v < (i128)INT64_MIN) throw Overflow(what);
    return (long long)v;
}

u64 mulmod(u64 a, u64 b, u64 m) { return (u64)((u128)a * b % m); }

u64 powmod(u64 a, u64 e, u64 m) {
    u64 r = 1;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod(r, a, m);
        a = mulmod(a, a, m);
        e >>= 1;
    }
    return r;
}

u64 gcd_u64(u64 a, u64 b) {
    while (b) {
        u64 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

// Pollard rho; callers pass odd composites.
u64 pollard_rho(u64 n) {
    if (n % 2 == 0) return 2;
    for (u64 c = 1;; ++c) {
        u64 x = 2, y = 2, d = 1;
        auto step = [&](u64 v) { return (u64)(((u128)v * v + c) % n); };
        while (d == 1) {
            x = step(x);
            y = step(step(y));
            d = gcd_u64(x > y ? x - y : y - x, n);
        }
        if (d != n) return d;
    }
}

void factor_rec(u64 n, std::vector<long long>& out) {
    if (n == 1) return;
    if (is_prime_u64(n)) {
        out.push_back((long long)n);
        return;
    }
    u64 d = pollard_rho(n);
    factor_rec(d, out);
    factor_rec(n / d, out);
}

i128 iabs(i128 v) { return v < 0 ? -v : v; }

i128 gcd_i128(i128 a, i128 b) {
    a = iabs(a);
    b = iabs(b);
    while (b) {
        i128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

}  // namespace

bool is_prime_u64(u64 n) {
    if (n < 2) return false;
    for (u64 p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        if (n % p == 0) return n == p;
    }
    u64 d = n - 1;
    int s = 0;
    while (d % 2 == 0) {
        d >>= 1;
        ++s;
    }
    // Deterministic witness set for 64-bit inputs.
    for (u64 a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        u64 x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool witness = true;
        for (int i = 1; i < s; ++i) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                witness = false;
                break;
            }
        }
        if (witness) return false;
    }
    return true;
}

std::vector<long long> prime_factors(long long n) {
    if (n == 0) throw ZeroLabel("prime_factors of zero");
    u64 m = n < 0 ? (u64)(-(i128)n) : (u64)n;
    std::vector<long long> out;
    for (long long p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47}) {
        while (m % (u64)p == 0) {
            m /= (u64)p;
            if (out.empty() || out.back() != p) out.push_back(p);
        }
    }
    if (m > 1) {
        std::vector<long long> rest;
        factor_rec(m, rest);
        out.insert(out.end(), rest.begin(), rest.end());
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::optional<std::size_t> PrimeBasis::index_of(long long p) const {
    auto it = std::lower_bound(primes.begin(), primes.end(), p);
    if (it != primes.end() && *it == p) return (std::size_t)(it - primes.begin());
    return std::nullopt;
}

void PrimeBasis::validate() const {
    for (std::size_t i = 0; i < primes.size(); ++i) {
        if (!is_prime_u64((u64)primes[i])) throw GbsError("basis entry is not prime");
        if (i > 0 && primes[i] <= primes[i - 1]) throw GbsError("basis not strictly increasing");
    }
}

BasisPtr basis_from_values(const std::vector<long long>& values) {
    std::vector<long long> primes;
    for (long long v : values)
        for (long long p : prime_factors(v)) primes.push_back(p);
    std::sort(primes.begin(), primes.end());
    primes.erase(std::unique(primes.begin(), primes.end()), primes.end());
    auto b = std::make_shared<PrimeBasis>();
    b->primes = std::move(primes);
    b->validate();
    return b;
}

long long FactoredInt::value() const {
    i128 v = unit;
    for (std::size_t i = 0; i < exps.size(); ++i)
        for (long long k = 0; k < exps[i]; ++k) {
            v *= basis->primes[i];
            if (v > (i128)INT64_MAX) throw Overflow("FactoredInt value");
        }
    return checked_ll(sign * v, "FactoredInt value");
}

long long FactoredInt::abs_value() const { return abs().value(); }

bool FactoredInt::is_unit_abs() const {
    if (unit != 1) return false;
    for (long long e : exps)
        if (e != 0) return false;
    return true;
}

bool FactoredInt::same_basis(const FactoredInt& o) const {
    return basis == o.basis || (basis && o.basis && *basis == *o.basis);
}

FactoredInt FactoredInt::abs() const {
    FactoredInt a = *this;
    a.sign = 1;
    return a;
}

bool FactoredInt::operator==(const FactoredInt& o) const {
    return sign == o.sign && unit == o.unit && exps == o.exps && same_basis(o);
}

FactoredInt factor(long long n, BasisPtr basis) {
    if (n == 0) throw ZeroLabel("cannot factor zero");
    FactoredInt f;
    f.basis = basis;
    f.sign = n < 0 ? -1 : 1;
    u64 m = n < 0 ? (u64)(-(i128)n) : (u64)n;
    f.exps.assign(basis->size(), 0);
    for (std::size_t i = 0; i < basis->size(); ++i) {
        u64 p = (u64)basis->primes[i];
        while (m % p == 0) {
            m /= p;
            ++f.exps[i];
        }
    }
    f.unit = (long long)m;
    return f;
}

bool divides(const FactoredInt& a, const FactoredInt& b, bool ignore_sign) {
    if (!a.same_basis(b)) throw BasisMismatch("divides: operands over different bases");
    if (b.unit % a.unit != 0) return false;
    for (std::size_t i = 0; i < a.exps.size(); ++i)
        if (a.exps[i] > b.exps[i]) return false;
    if (!ignore_sign && a.sign * b.sign < 0) return false;
    return true;
}

FactoredRational FactoredRational::one(BasisPtr basis) {
    FactoredRational r;
    r.basis = basis;
    r.exps.assign(basis->size(), 0);
    return r;
}

FactoredRational FactoredRational::ratio(const FactoredInt& num, const FactoredInt& den) {
    if (!num.same_basis(den)) throw BasisMismatch("ratio: operands over different bases");
    FactoredRational r;
    r.basis = num.basis;
    r.sign = num.sign * den.sign;
    long long g = std::gcd(num.unit, den.unit);
    r.unit_num = num.unit / g;
    r.unit_den = den.unit / g;
    r.exps.resize(num.exps.size());
    for (std::size_t i = 0; i < num.exps.size(); ++i) r.exps[i] = num.exps[i] - den.exps[i];
    return r;
}

FactoredRational FactoredRational::times(const FactoredRational& o) const {
    if (!(basis == o.basis || (basis && o.basis && *basis == *o.basis)))
        throw BasisMismatch("times: operands over different bases");
    FactoredRational r;
    r.basis = basis;
    r.sign = sign * o.sign;
    long long n = checked_ll((i128)unit_num * o.unit_num, "unit product");
    long long d = checked_ll((i128)unit_den * o.unit_den, "unit product");
    long long g = std::gcd(n, d);
    r.unit_num = n / g;
    r.unit_den = d / g;
    r.exps.resize(exps.size());
    for (std::size_t i = 0; i < exps.size(); ++i) r.exps[i] = exps[i] + o.exps[i];
    return r;
}

FactoredRational FactoredRational::inverse() const {
    FactoredRational r = *this;
    std::swap(r.unit_num, r.unit_den);
    for (auto& e : r.exps) e = -e;
    return r;
}

bool FactoredRational::is_integer() const {
    if (unit_den != 1) return false;
    for (long long e : exps)
        if (e < 0) return false;
    return true;
}

bool FactoredRational::is_unit_abs() const {
    if (unit_num != 1 || unit_den != 1) return false;
    for (long long e : exps)
        if (e != 0) return false;
    return true;
}

FactoredInt FactoredRational::to_integer() const {
    if (!is_integer()) throw GbsError("FactoredRational is not an integer");
    FactoredInt f;
    f.basis = basis;
    f.sign = sign;
    f.unit = unit_num;
    f.exps = exps;
    return f;
}

std::pair<long long, long long> FactoredRational::value_pair() const {
    i128 num = unit_num, den = unit_den;
    for (std::size_t i = 0; i < exps.size(); ++i) {
        long long e = exps[i];
        for (long long k = 0; k < e; ++k) {
            num *= basis->primes[i];
            if (num > (i128)INT64_MAX) throw Overflow("rational numerator");
        }
        for (long long k = 0; k < -e; ++k) {
            den *= basis->primes[i];
            if (den > (i128)INT64_MAX) throw Overflow("rational denominator");
        }
    }
    return {checked_ll(sign * num, "rational numerator"), checked_ll(den, "rational denominator")};
}

std::string FactoredRational::to_string() const {
    try {
        auto [n, d] = value_pair();
        if (d == 1) return std::to_string(n);
        return std::to_string(n) + "/" + std::to_string(d);
    } catch (const Overflow&) {
        // factored fallback for values beyond 64 bits
        std::string num = sign < 0 ? "-" : "";
        std::string den;
        if (unit_num != 1) num += std::to_string(unit_num) + "*";
        if (unit_den != 1) den += std::to_string(unit_den) + "*";
        for (std::size_t i = 0; i < exps.size(); ++i) {
            if (exps[i] > 0)
                num += std::to_string(basis->primes[i]) + "^" + std::to_string(exps[i]) + "*";
            if (exps[i] < 0)
                den += std::to_string(basis->primes[i]) + "^" + std::to_string(-exps[i]) + "*";
        }
        if (!num.empty() && num.back() == '*') num.pop_back();
        if (!den.empty() && den.back() == '*') den.pop_back();
        if (num.empty() || num == "-") num += "1";
        return den.empty() ? num : num + "/" + den;
    }
}

bool FactoredRational::operator==(const FactoredRational& o) const {
    return sign == o.sign && unit_num == o.unit_num && unit_den == o.unit_den && exps == o.exps;
}

// ---------------------------------------------------------------------------
// Integer linear algebra.

void LinearConstraintSystem::validate() const {
    for (const auto& row : rows)
        if ((int)row.coeffs.size() != dim)
            throw DimensionMismatch("row width does not match system dimension");
}

namespace {

// Row/column elimination to a diagonal form, tracking column operations in V
// and applying row operations to b. Ranks here are tiny.
struct Diagonalizer {
    std::vector<std::vector<i128>> a;
    std::vector<i128> b;
    std::vector<std::vector<i128>> v;  // d x d column-op accumulator
    int r, d;

    Diagonalizer(const std::vector<std::vector<long long>>& A, const std::vector<long long>& B) {
        r = (int)A.size();
        d = (int)A[0].size();
        a.assign(r, std::vector<i128>(d, 0));
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < d; ++j) a[i][j] = A[i][j];
        b.assign(B.begin(), B.end());
        v.assign(d, std::vector<i128>(d, 0));
        for (int j = 0; j < d; ++j) v[j][j] = 1;
    }

    static void guard(i128 x) {
        const i128 lim = (i128)1 << 100;
        if (x > lim || x < -lim) throw Overflow("integer elimination blow-up");
    }

    void run() {
        int k = 0;
        while (k < r && k < d) {
            int pi = -1, pj = -1;
            i128 best = 0;
            for (int i = k; i < r; ++i)
                for (int j = k; j < d; ++j) {
                    i128 x = iabs(a[i][j]);
                    if (x != 0 && (pi < 0 || x < best)) {
                        best = x;
                        pi = i;
                        pj = j;
                    }
                }
            if (pi < 0) break;
            std::swap(a[k], a[pi]);
            std::swap(b[k], b[pi]);
            if (pj != k) {
                for (int i = 0; i < r; ++i) std::swap(a[i][k], a[i][pj]);
                for (int i = 0; i < d; ++i) std::swap(v[i][k], v[i][pj]);
            }
            bool clean = true;
            for (int i = k + 1; i < r; ++i) {
                i128 q = a[i][k] / a[k][k];
                if (q != 0) {
                    for (int j = 0; j < d; ++j) {
                        a[i][j] -= q * a[k][j];
                        guard(a[i][j]);
                    }
                    b[i] -= q * b[k];
                    guard(b[i]);
                }
                if (a[i][k] != 0) clean = false;
            }
            for (int j = k + 1; j < d; ++j) {
                i128 q = a[k][j] / a[k][k];
                if (q != 0) {
                    for (int i = 0; i < r; ++i) {
                        a[i][j] -= q * a[i][k];
                        guard(a[i][j]);
                    }
                    for (int i = 0; i < d; ++i) {
                        v[i][j] -= q * v[i][k];
                        guard(v[i][j]);
                    }
                }
                if (a[k][j] != 0) clean = false;
            }
            if (clean) ++k;
        }
    }
};

}  // namespace

Decision<std::vector<long long>> solve_integer_linear(
    const std::vector<std::vector<long long>>& A, const std::vector<long long>& b) {
    if (A.empty() || A[0].empty()) throw DimensionMismatch("solve_integer_linear: empty system");
    if (A.size() != b.size()) throw DimensionMismatch("solve_integer_linear: rhs size mismatch");
    for (const auto& row : A)
        if (row.size() != A[0].size())
            throw DimensionMismatch("solve_integer_linear: ragged matrix");

    Diagonalizer dia(A, b);
    dia.run();

    int r = dia.r, d = dia.d;
    std::vector<i128> z(d, 0);
    for (int i = 0; i < r && i < d; ++i) {
        if (dia.a[i][i] == 0) {
            if (dia.b[i] != 0)
                return Decision<std::vector<long long>>::no_because("inconsistent row");
        } else {
            if (dia.b[i] % dia.a[i][i] != 0)
                return Decision<std::vector<long long>>::no_because("divisibility obstruction");
            z[i] = dia.b[i] / dia.a[i][i];
        }
    }
    for (int i = d; i < r; ++i)
        if (dia.b[i] != 0) return Decision<std::vector<long long>>::no_because("inconsistent row");

    std::vector<long long> y(d, 0);
    for (int i = 0; i < d; ++i) {
        i128 acc = 0;
        for (int j = 0; j < d; ++j) acc += dia.v[i][j] * z[j];
        y[i] = checked_ll(acc, "solution entry");
    }
    return Decision<std::vector<long long>>::yes_with(std::move(y));
}

// ---------------------------------------------------------------------------
// Lattice-point feasibility.

namespace {

i128 ceil_div(i128 num, i128 den) {  // den > 0
    i128 q = num / den;
    if (num % den != 0 && num > 0) ++q;
    return q;
}
i128 floor_div(i128 num, i128 den) {  // den > 0
    i128 q = num / den;
    if (num % den != 0 && num < 0) --q;
    return q;
}

struct Interval {
    bool empty = false;
    bool has_lo = false, has_hi = false;
    i128 lo = 0, hi = 0;

    void clip_lo(i128 v) {
        if (!has_lo || v > lo) {
            has_lo = true;
            lo = v;
        }
        normalize();
    }
    void clip_hi(i128 v) {
        if (!has_hi || v < hi) {
            has_hi = true;
            hi = v;
        }
        normalize();
    }
    void normalize() {
        if (has_lo && has_hi && lo > hi) empty = true;
    }
    std::optional<i128> pick() const {
        if (empty) return std::nullopt;
        if (has_lo) return lo;
        if (has_hi) return hi;
        return (i128)0;
    }
};

// Integer interval for variable `var` with the other variables fixed.
Interval interval_1d(const std::vector<LinearRow>& rows, int var, const std::vector<i128>& fixed,
                     int dim) {
    Interval iv;
    for (const auto& row : rows) {
        i128 a = row.coeffs[var];
        i128 c = row.rhs;
        for (int j = 0; j < dim; ++j) {
            if (j == var) continue;
            c -= (i128)row.coeffs[j] * fixed[j];
        }
        if (row.rel == LinearRow::GE) {
            if (a == 0) {
                if (0 < c) iv.empty = true;
            } else if (a > 0) {
                iv.clip_lo(ceil_div(c, a));
            } else {
                iv.clip_hi(floor_div(-c, -a));
            }
        } else {
            if (a == 0) {
                if (c != 0) iv.empty = true;
            } else if (c % a != 0) {
                iv.empty = true;
            } else {
                iv.clip_lo(c / a);
                iv.clip_hi(c / a);
            }
        }
        if (iv.empty) break;
    }
    return iv;
}

// Fourier-Motzkin over exact integer rows: each row is (c_0..c_{d-1}, rhs)
// standing for sum c_j x_j >= rhs. Returns rational feasibility.
bool rationally_feasible(const LinearConstraintSystem& sys) {
    std::vector<std::vector<i128>> rows;
    for (const auto& r : sys.rows) {
        std::vector<i128> v(r.coeffs.begin(), r.coeffs.end());
        v.push_back(r.rhs);
        rows.push_back(v);
        if (r.rel == LinearRow::EQ) {
            for (auto& x : v) x = -x;
            rows.push_back(v);
        }
    }
    auto reduce = [](std::vector<i128>& v) {
        i128 g = 0;
        for (i128 x : v) g = gcd_i128(g, x);
        if (g > 1)
            for (auto& x : v) x /= g;
    };
    for (int var = sys.dim - 1; var >= 0; --var) {
        std::vector<std::vector<i128>> pos, neg, next;
        for (auto& r : rows) {
            if (r[var] > 0)
                pos.push_back(r);
            else if (r[var] < 0)
                neg.push_back(r);
            else
                next.push_back(r);
        }
        for (const auto& p : pos)
            for (const auto& n : neg) {
                // p scaled by -n_var plus n scaled by p_var cancels x_var
                std::vector<i128> sum(p.size());
                for (std::size_t j = 0; j < p.size(); ++j) {
                    sum[j] = p[j] * (-n[var]) + n[j] * p[var];
                    Diagonalizer::guard(sum[j]);
                }
                reduce(sum);
                next.push_back(std::move(sum));
            }
        rows = std::move(next);
    }
    for (const auto& r : rows)
        if (r.back() > 0) return false;  // 0 >= positive
    return true;
}

// Largest absolute subdeterminant (any size) of the augmented matrix [A | b];
// feeds the von zur Gathen-Sieveking witness bound.
i128 max_minor_2d(const LinearConstraintSystem& sys) {
    std::vector<std::vector<i128>> m;
    for (const auto& r : sys.rows) m.push_back({r.coeffs[0], r.coeffs[1], r.rhs});
    i128 best = 1;
    auto upd = [&](i128 v) {
        v = iabs(v);
        if (v > best) best = v;
    };
    for (const auto& r : m)
        for (i128 v : r) upd(v);
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = i + 1; j < m.size(); ++j) {
            for (int c1 = 0; c1 < 3; ++c1)
                for (int c2 = c1 + 1; c2 < 3; ++c2) upd(m[i][c1] * m[j][c2] - m[i][c2] * m[j][c1]);
            for (std::size_t k = j + 1; k < m.size(); ++k) {
                i128 det = m[i][0] * (m[j][1] * m[k][2] - m[j][2] * m[k][1]) -
                           m[i][1] * (m[j][0] * m[k][2] - m[j][2] * m[k][0]) +
                           m[i][2] * (m[j][0] * m[k][1] - m[j][1] * m[k][0]);
                upd(det);
            }
        }
    return best;
}

// Rational projection of the feasible region onto x_0 (eliminate x_1 by
// Fourier-Motzkin pairing); integer-rounded interval.
Interval project_to_x0(const LinearConstraintSystem& sys) {
    std::vector<std::vector<i128>> rows;  // (c0, c1, rhs): c0 x0 + c1 x1 >= rhs
    for (const auto& r : sys.rows) {
        std::vector<i128> v = {r.coeffs[0], r.coeffs[1], r.rhs};
        rows.push_back(v);
        if (r.rel == LinearRow::EQ) {
            for (auto& x : v) x = -x;
            rows.push_back(v);
        }
    }
    std::vector<std::vector<i128>> pos, neg, flat;
    for (auto& r : rows) {
        if (r[1] > 0)
            pos.push_back(r);
        else if (r[1] < 0)
            neg.push_back(r);
        else
            flat.push_back(r);
    }
    for (const auto& p : pos)
        for (const auto& n : neg) {
            std::vector<i128> sum(3);
            for (int j = 0; j < 3; ++j) {
                sum[j] = p[j] * (-n[1]) + n[j] * p[1];
                Diagonalizer::guard(sum[j]);
            }
            flat.push_back(sum);
        }
    Interval iv;
    for (const auto& r : flat) {
        i128 a = r[0], c = r[2];
        if (a == 0) {
            if (0 < c) iv.empty = true;
        } else if (a > 0) {
            iv.clip_lo(ceil_div(c, a));
        } else {
            iv.clip_hi(floor_div(-c, -a));
        }
        if (iv.empty) break;
    }
    return iv;
}

Decision<std::vector<long long>> feasible_2d(const LinearConstraintSystem& sys) {
    using D = Decision<std::vector<long long>>;
    // An equation confines solutions to a line; substitute and solve in 1D.
    for (std::size_t i = 0; i < sys.rows.size(); ++i) {
        const auto& eq = sys.rows[i];
        if (eq.rel != LinearRow::EQ) continue;
        long long a = eq.coeffs[0], b = eq.coeffs[1];
        if (a == 0 && b == 0) {
            if (eq.rhs != 0) return D::no_because("0 == nonzero");
            continue;
        }
        long long g = std::gcd(std::abs(a), std::abs(b));
        if (eq.rhs % g != 0) return D::no_because("gcd obstruction on equation");
        long long s0 = 1, s1 = 0, t0 = 0, t1 = 1, r0 = a, r1 = b;
        while (r1 != 0) {
            long long q = r0 / r1;
            std::tie(r0, r1) = std::make_tuple(r1, r0 - q * r1);
            std::tie(s0, s1) = std::make_tuple(s1, s0 - q * s1);
            std::tie(t0, t1) = std::make_tuple(t1, t0 - q * t1);
        }
        long long x0 = checked_ll((i128)s0 * (eq.rhs / r0), "particular solution");
        long long y0 = checked_ll((i128)t0 * (eq.rhs / r0), "particular solution");
        long long dx = b / g, dy = -a / g;
        std::vector<LinearRow> trows;
        for (std::size_t j = 0; j < sys.rows.size(); ++j) {
            if (j == i) continue;
            const auto& r = sys.rows[j];
            LinearRow nr;
            nr.rel = r.rel;
            nr.coeffs = {checked_ll((i128)r.coeffs[0] * dx + (i128)r.coeffs[1] * dy, "subst")};
            nr.rhs =
                checked_ll((i128)r.rhs - (i128)r.coeffs[0] * x0 - (i128)r.coeffs[1] * y0, "subst");
            trows.push_back(nr);
        }
        Interval iv = interval_1d(trows, 0, {0}, 1);
        auto t = iv.pick();
        if (!t) return D::no_because("empty line section");
        return D::yes_with({checked_ll(x0 + *t * dx, "witness"), checked_ll(y0 + *t * dy, "witness")});
    }

    if (!rationally_feasible(sys)) return D::no_because("rationally infeasible");

    // Sweep x_0 over a range the von zur Gathen-Sieveking bound proves
    // sufficient: some solution has both coordinates within 3 * max |minor|.
    // The rational projection narrows the sweep to the actual slab.
    i128 bound = 3 * max_minor_2d(sys);
    Interval proj = project_to_x0(sys);
    if (proj.empty) return D::no_because("empty projection");
    i128 lo = proj.has_lo ? std::max(-bound, proj.lo) : -bound;
    i128 hi = proj.has_hi ? std::min(bound, proj.hi) : bound;
    std::vector<i128> fixed(2, 0);
    for (i128 x = lo; x <= hi; ++x) {
        fixed[0] = x;
        Interval iv = interval_1d(sys.rows, 1, fixed, 2);
        auto y = iv.pick();
        if (y) return D::yes_with({checked_ll(x, "witness"), checked_ll(*y, "witness")});
    }
    return D::no_because("sweep exhausted within proven bound");
}

bool bnb(const LinearConstraintSystem& sys, int var, std::vector<i128>& fixed, long long box,
         std::vector<long long>& out) {
    if (var < 0) {
        for (const auto& r : sys.rows) {
            i128 lhs = 0;
            for (int j = 0; j < sys.dim; ++j) lhs += (i128)r.coeffs[j] * fixed[j];
            if (r.rel == LinearRow::GE ? lhs < r.rhs : lhs != r.rhs) return false;
        }
        out.clear();
        for (i128 v : fixed) out.push_back(checked_ll(v, "witness"));
        return true;
    }
    // Variables var..dim-1 are still free; prune on rows that only mention
    // already-fixed variables (> var).
    for (i128 x = -box; x <= box; ++x) {
        fixed[var] = x;
        bool prune = false;
        for (const auto& r : sys.rows) {
            bool determined = true;
            i128 lhs = 0;
            for (int j = 0; j < sys.dim; ++j) {
                if (j < var) {
                    if (r.coeffs[j] != 0) {
                        determined = false;
                        break;
                    }
                } else {
                    lhs += (i128)r.coeffs[j] * fixed[j];
                }
            }
            if (determined && (r.rel == LinearRow::GE ? lhs < r.rhs : lhs != r.rhs)) {
                prune = true;
                break;
            }
        }
        if (prune) continue;
        if (bnb(sys, var - 1, fixed, box, out)) return true;
    }
    return false;
}

}  // namespace

Decision<std::vector<long long>> ilp_feasible(const LinearConstraintSystem& sys,
                                              const SearchBudget& budget) {
    sys.validate();
    using D = Decision<std::vector<long long>>;
    if (sys.dim == 0) {
        for (const auto& r : sys.rows) {
            bool ok = r.rel == LinearRow::GE ? 0 >= r.rhs : 0 == r.rhs;
            if (!ok) return D::no_because("unsatisfiable constant row");
        }
        return D::yes_with({});
    }
    if (sys.dim == 1) {
        Interval iv = interval_1d(sys.rows, 0, {0}, 1);
        auto x = iv.pick();
        if (!x) return D::no_because("empty interval");
        return D::yes_with({checked_ll(*x, "witness")});
    }
    if (sys.dim == 2) return feasible_2d(sys);

    if (!rationally_feasible(sys)) return D::no_because("rationally infeasible");
    long long box = sys.box.value_or(budget.ilp_box);
    std::vector<i128> fixed(sys.dim, 0);
    std::vector<long long> out;
    if (bnb(sys, sys.dim - 1, fixed, box, out)) return D::yes_with(std::move(out));
    return D::inconclusive_at("no lattice point within branch-and-bound box", box);
}

std::vector<std::vector<long long>> hermite_normal_form(std::vector<std::vector<long long>> rows) {
    if (rows.empty()) return rows;
    std::size_t cols = rows[0].size();
    std::vector<std::vector<i128>> m;
    for (auto& r : rows) m.emplace_back(r.begin(), r.end());
    std::size_t pivot_row = 0;
    for (std::size_t col = 0; col < cols && pivot_row < m.size(); ++col) {
        while (true) {
            int best = -1;
            for (std::size_t i = pivot_row; i < m.size(); ++i) {
                if (m[i][col] != 0 && (best < 0 || iabs(m[i][col]) < iabs(m[(std::size_t)best][col])))
                    best = (int)i;
            }
            if (best < 0) break;
            std::swap(m[pivot_row], m[(std::size_t)best]);
            bool done = true;
            for (std::size_t i = pivot_row + 1; i < m.size(); ++i) {
                if (m[i][col] == 0) continue;
                i128 q = m[i][col] / m[pivot_row][col];
                for (std::size_t j = 0; j < cols; ++j) {
                    m[i][j] -= q * m[pivot_row][j];
                    Diagonalizer::guard(m[i][j]);
                }
                if (m[i][col] != 0) done = false;
            }
            if (done) break;
        }
        if (m[pivot_row][col] == 0) continue;
        if (m[pivot_row][col] < 0)
            for (std::size_t j = 0; j < cols; ++j) m[pivot_row][j] = -m[pivot_row][j];
        for (std::size_t i = 0; i < pivot_row; ++i) {
            i128 q = floor_div(m[i][col], m[pivot_row][col]);
            if (q != 0)
                for (std::size_t j = 0; j < cols; ++j) m[i][j] -= q * m[pivot_row][j];
        }
        ++pivot_row;
    }
    m.resize(pivot_row);
    std::vector<std::vector<long long>> out;
    for (auto& r : m) {
        std::vector<long long> rr;
        for (i128 v : r) rr.push_back(checked_ll(v, "hnf entry"));
        out.push_back(std::move(rr));
    }
    return out;
}

bool lattices_equal(const std::vector<std::vector<long long>>& a,
                    const std::vector<std::vector<long long>>& b) {
    return hermite_normal_form(a) == hermite_normal_form(b);
}

}  // namespace gbs
