#pragma once

// Exact arithmetic in the cyclotomic field Q(zeta8), zeta8 = exp(i*pi/4).
// Elements are stored as c0 + c1*zeta + c2*zeta^2 + c3*zeta^3 with rational
// coefficients (zeta^4 = -1 reduced away).  The field contains I = zeta^2,
// R2 = sqrt(2) = zeta - zeta^3, sqrt(I) = zeta, and tan(pi/8) = R2 - 1.
//
// An element can also be in "approx" mode (complex double), used only by
// exploratory paths; exact and approx never mix silently.

#include <array>
#include <complex>
#include <numeric>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>

#include <gmpxx.h>

namespace ev8 {

using Q = mpq_class;

// Every domain error carries the short error name the CLI prints.
struct Error : std::runtime_error {
    std::string name;
    Error(std::string n, const std::string& what)
        : std::runtime_error(n + ": " + what), name(std::move(n)) {}
};

[[noreturn]] inline void fail(const std::string& name, const std::string& what) {
    throw Error(name, what);
}

inline constexpr double kApproxEps = 1e-9;

class FieldElem {
  public:
    enum class Mode : uint8_t { Exact, Approx };

    FieldElem() : mode_(Mode::Exact) {}
    FieldElem(long v) : mode_(Mode::Exact) { c_[0] = v; }
    FieldElem(int v) : mode_(Mode::Exact) { c_[0] = v; }
    explicit FieldElem(const Q& v) : mode_(Mode::Exact) { c_[0] = v; }

    static FieldElem exact(Q c0, Q c1, Q c2, Q c3) {
        FieldElem x;
        x.c_ = {std::move(c0), std::move(c1), std::move(c2), std::move(c3)};
        return x;
    }
    static FieldElem approx(std::complex<double> z) {
        FieldElem x;
        x.mode_ = Mode::Approx;
        x.a_ = z;
        return x;
    }
    static FieldElem i() { return exact(0, 0, 1, 0); }
    static FieldElem sqrt2() { return exact(0, 1, 0, -1); }

    // zeta8^(k mod 8) in canonical (degree < 4) form.
    static FieldElem zeta8_pow(long k) {
        k = ((k % 8) + 8) % 8;
        FieldElem x;
        if (k < 4) {
            x.c_[static_cast<size_t>(k)] = 1;
        } else {
            x.c_[static_cast<size_t>(k - 4)] = -1;
        }
        return x;
    }

    Mode mode() const { return mode_; }
    bool is_exact() const { return mode_ == Mode::Exact; }
    const Q& coeff(int k) const { return c_[static_cast<size_t>(k)]; }

    bool is_zero() const {
        if (mode_ == Mode::Approx) return std::abs(a_) <= kApproxEps;
        for (const auto& c : c_)
            if (c != 0) return false;
        return true;
    }
    bool is_rational() const {
        return is_exact() && c_[1] == 0 && c_[2] == 0 && c_[3] == 0;
    }
    // Fixed by conjugation <=> in the real subfield Q(sqrt 2).
    bool is_real_subfield() const {
        return is_exact() && c_[2] == 0 && c_[1] == -c_[3];
    }
    const Q& rational() const {
        if (!is_rational()) fail("NotRational", "element is not rational: " + str());
        return c_[0];
    }

    FieldElem operator-() const {
        if (mode_ == Mode::Approx) return approx(-a_);
        return exact(-c_[0], -c_[1], -c_[2], -c_[3]);
    }

    friend FieldElem operator+(const FieldElem& a, const FieldElem& b) {
        check_modes(a, b);
        if (a.mode_ == Mode::Approx) return approx(a.a_ + b.a_);
        return exact(a.c_[0] + b.c_[0], a.c_[1] + b.c_[1], a.c_[2] + b.c_[2],
                     a.c_[3] + b.c_[3]);
    }
    friend FieldElem operator-(const FieldElem& a, const FieldElem& b) { return a + (-b); }

    friend FieldElem operator*(const FieldElem& a, const FieldElem& b) {
        check_modes(a, b);
        if (a.mode_ == Mode::Approx) return approx(a.a_ * b.a_);
        // zeta^(i+j) with zeta^4 = -1: index (i+j) mod 8, sign flip above 3.
        std::array<Q, 4> r{};
        for (int i = 0; i < 4; ++i) {
            if (a.c_[static_cast<size_t>(i)] == 0) continue;
            for (int j = 0; j < 4; ++j) {
                if (b.c_[static_cast<size_t>(j)] == 0) continue;
                Q prod = a.c_[static_cast<size_t>(i)] * b.c_[static_cast<size_t>(j)];
                int k = i + j;
                if (k >= 4) {
                    r[static_cast<size_t>(k - 4)] -= prod;
                } else {
                    r[static_cast<size_t>(k)] += prod;
                }
            }
        }
        return exact(r[0], r[1], r[2], r[3]);
    }

    FieldElem& operator+=(const FieldElem& o) { return *this = *this + o; }
    FieldElem& operator-=(const FieldElem& o) { return *this = *this - o; }
    FieldElem& operator*=(const FieldElem& o) { return *this = *this * o; }

    // Complex conjugation: zeta -> zeta^-1 = -zeta^3.
    FieldElem conj() const {
        if (mode_ == Mode::Approx) return approx(std::conj(a_));
        return exact(c_[0], -c_[3], -c_[2], -c_[1]);
    }

    // Galois map zeta -> zeta^k for odd k.
    FieldElem galois(int k) const {
        if (mode_ == Mode::Approx) fail("ApproxMode", "galois needs exact mode");
        k = ((k % 8) + 8) % 8;
        if (k % 2 == 0) fail("BadGalois", "k must be odd mod 8");
        FieldElem r;
        for (int j = 0; j < 4; ++j) {
            if (c_[static_cast<size_t>(j)] == 0) continue;
            FieldElem term = zeta8_pow(static_cast<long>(j) * k);
            for (auto& t : term.c_) t *= c_[static_cast<size_t>(j)];
            r += term;
        }
        return r;
    }

    FieldElem inv() const {
        if (is_zero()) fail("DivisionByZero", "inverse of zero");
        if (mode_ == Mode::Approx) return approx(1.0 / a_);
        // inv(x) = sigma3(x) sigma5(x) sigma7(x) / Norm(x), Norm in Q.
        FieldElem num = galois(3) * galois(5) * galois(7);
        FieldElem norm = *this * num;
        if (!norm.is_rational() || norm.c_[0] == 0)
            fail("InternalError", "field norm not a nonzero rational");
        Q inv_norm = Q(norm.c_[0].get_den(), norm.c_[0].get_num());
        inv_norm.canonicalize();
        return exact(num.c_[0] * inv_norm, num.c_[1] * inv_norm, num.c_[2] * inv_norm,
                     num.c_[3] * inv_norm);
    }

    friend FieldElem operator/(const FieldElem& a, const FieldElem& b) { return a * b.inv(); }

    FieldElem pow(long e) const {
        if (e < 0) return inv().pow(-e);
        FieldElem r(1), base = *this;
        while (e > 0) {
            if (e & 1) r *= base;
            base *= base;
            e >>= 1;
        }
        return r;
    }

    friend bool operator==(const FieldElem& a, const FieldElem& b) {
        if (a.mode_ != b.mode_) fail("ModeMismatch", "comparing exact with approx");
        if (a.mode_ == Mode::Approx) return std::abs(a.a_ - b.a_) <= kApproxEps;
        return a.c_ == b.c_;
    }
    friend bool operator!=(const FieldElem& a, const FieldElem& b) { return !(a == b); }

    // Total order on exact elements (coefficient-lexicographic), for map keys.
    friend bool operator<(const FieldElem& a, const FieldElem& b) {
        if (!a.is_exact() || !b.is_exact()) fail("ApproxMode", "ordering needs exact mode");
        for (int k = 0; k < 4; ++k) {
            int c = cmp(a.c_[static_cast<size_t>(k)], b.c_[static_cast<size_t>(k)]);
            if (c != 0) return c < 0;
        }
        return false;
    }

    // Explicit, lossy conversion.
    std::complex<double> to_complex() const {
        if (mode_ == Mode::Approx) return a_;
        static const std::complex<double> z8(std::sqrt(0.5), std::sqrt(0.5));
        std::complex<double> r(0, 0), p(1, 0);
        for (int k = 0; k < 4; ++k) {
            r += std::complex<double>(c_[static_cast<size_t>(k)].get_d(), 0.0) * p;
            p *= z8;
        }
        return r;
    }
    FieldElem to_approx() const { return approx(to_complex()); }

    std::string str() const;

  private:
    static void check_modes(const FieldElem& a, const FieldElem& b) {
        if (a.mode_ != b.mode_)
            fail("ModeMismatch", "exact/approx arithmetic requires explicit conversion");
    }

    Mode mode_;
    std::array<Q, 4> c_{};          // exact coefficients
    std::complex<double> a_{0, 0};  // approx value
};

inline FieldElem zeta8_pow(long k) { return FieldElem::zeta8_pow(k); }

enum class ArithOp { Add, Sub, Mul, Div };

inline FieldElem arith(const FieldElem& a, const FieldElem& b, ArithOp op) {
    switch (op) {
        case ArithOp::Add: return a + b;
        case ArithOp::Sub: return a - b;
        case ArithOp::Mul: return a * b;
        case ArithOp::Div: return a / b;
    }
    fail("BadOp", "unknown op");
}

// The roots of unity in Q(zeta8) are exactly the powers of zeta8; returns the
// multiplicative order, or nullopt if x is not a root of unity.
inline std::optional<int> is_root_of_unity(const FieldElem& x) {
    if (x.is_zero()) fail("ZeroInput", "0 is not a root of unity");
    if (!x.is_exact()) fail("ApproxMode", "root-of-unity test needs exact mode");
    for (int k = 0; k < 8; ++k) {
        if (x == zeta8_pow(k)) {
            if (k == 0) return 1;
            int g = std::gcd(k, 8);
            return 8 / g;
        }
    }
    return std::nullopt;
}

// Magnitude (prod p^e, e in (1/2)Z, only p=2 may carry the half) times a
// phase zeta16^k.  Only x = q*zeta8^j and x = q*sqrt2*zeta8^j (q in Q+) are
// decomposable; everything else raises NotDecomposable.
struct MagPhase {
    std::map<long, long> doubled_exp;  // prime -> 2*exponent
    int phase_sixteenth = 0;           // phase is zeta16^phase_sixteenth

    FieldElem reconstruct() const {
        Q mag(1);
        bool half = false;
        for (auto [p, e2] : doubled_exp) {
            long e = e2 / 2;
            if (e2 % 2 != 0) {
                if (p != 2) fail("InternalError", "half-integer exponent on odd prime");
                half = true;
                e = (e2 - 1) / 2;
            }
            if (e >= 0)
                for (long t = 0; t < e; ++t) mag *= p;
            else
                for (long t = 0; t < -e; ++t) mag /= p;
        }
        if (phase_sixteenth % 2 != 0) fail("InternalError", "phase outside Q(zeta8)");
        FieldElem r = FieldElem(mag) * zeta8_pow(phase_sixteenth / 2);
        if (half) r = r * FieldElem::sqrt2();
        return r;
    }
};

namespace detail {
inline void add_prime_exponents(std::map<long, long>& m, mpz_class n, int sign2) {
    // factor n (positive integer), adding sign2 * 2 * multiplicity per prime
    if (n < 0) n = -n;
    for (long p = 2; p * p <= n; ++p) {
        while (n % p == 0) {
            m[p] += 2 * sign2;
            n /= p;
        }
    }
    if (n > 1) m[n.get_si()] += 2 * sign2;
    for (auto it = m.begin(); it != m.end();)
        it = (it->second == 0) ? m.erase(it) : std::next(it);
}
}  // namespace detail

inline MagPhase mag_phase(const FieldElem& x) {
    if (!x.is_exact()) fail("ApproxMode", "mag_phase needs exact mode");
    if (x.is_zero()) fail("ZeroInput", "mag_phase of zero");
    for (int k = 0; k < 8; ++k) {
        FieldElem y = x * zeta8_pow(-k);
        Q q;
        bool hit = false, half = false;
        if (y.is_rational() && y.coeff(0) > 0) {
            q = y.coeff(0);
            hit = true;
        } else if (y.is_exact() && y.coeff(0) == 0 && y.coeff(2) == 0 &&
                   y.coeff(1) == -y.coeff(3) && y.coeff(1) > 0) {
            q = y.coeff(1);  // y = q * sqrt2
            hit = true;
            half = true;
        }
        if (!hit) continue;
        MagPhase mp;
        mp.phase_sixteenth = 2 * k;
        detail::add_prime_exponents(mp.doubled_exp, q.get_num(), +1);
        detail::add_prime_exponents(mp.doubled_exp, q.get_den(), -1);
        if (half) mp.doubled_exp[2] += 1;
        if (mp.doubled_exp.count(2) && mp.doubled_exp[2] == 0) mp.doubled_exp.erase(2);
        return mp;
    }
    fail("NotDecomposable", "element has non-monomial magnitude: " + x.str());
}

inline bool is_decomposable(const FieldElem& x) {
    if (!x.is_exact() || x.is_zero()) return false;
    try {
        mag_phase(x);
        return true;
    } catch (const Error&) {
        return false;
    }
}

// |x|^2 = x * conj(x), always in the real subfield.
inline FieldElem norm2(const FieldElem& x) { return x * x.conj(); }

inline bool is_unimodular(const FieldElem& x) {
    if (!x.is_exact()) return std::abs(std::abs(x.to_complex()) - 1.0) <= kApproxEps;
    return norm2(x) == FieldElem(1);
}

// Square roots inside Q(zeta8).  Returns a root when one provably exists,
// nullopt when provably none exists, and sets *undecided for inputs outside
// the decomposable form (where we do not decide).
inline std::optional<FieldElem> sqrt_in_field(const FieldElem& x, bool* undecided = nullptr) {
    if (undecided) *undecided = false;
    if (x.is_zero()) return FieldElem(0);
    if (!x.is_exact()) fail("ApproxMode", "sqrt_in_field needs exact mode");
    if (!is_decomposable(x)) {
        if (undecided) *undecided = true;
        return std::nullopt;
    }
    MagPhase mp = mag_phase(x);
    if (mp.doubled_exp.count(2) && mp.doubled_exp[2] % 2 != 0) return std::nullopt;
    if (mp.phase_sixteenth % 4 != 0) return std::nullopt;  // odd zeta8 power
    // magnitude q: sqrt exists in field iff q or q/2 is a rational square
    Q q(1);
    for (auto [p, e2] : mp.doubled_exp) {
        long e = e2 / 2;
        if (e >= 0)
            for (long t = 0; t < e; ++t) q *= p;
        else
            for (long t = 0; t < -e; ++t) q /= p;
    }
    auto rational_sqrt = [](const Q& v) -> std::optional<Q> {
        mpz_class num = v.get_num(), den = v.get_den();
        if (num < 0) return std::nullopt;
        mpz_class rn = sqrt(num), rd = sqrt(den);
        if (rn * rn == num && rd * rd == den) {
            Q r(rn, rd);
            r.canonicalize();
            return r;
        }
        return std::nullopt;
    };
    FieldElem phase_root = zeta8_pow(mp.phase_sixteenth / 4);
    if (auto r = rational_sqrt(q)) return FieldElem(*r) * phase_root;
    if (auto r = rational_sqrt(q / 2))
        return FieldElem(*r) * FieldElem::sqrt2() * phase_root;
    return std::nullopt;
}

inline std::string FieldElem::str() const {
    if (mode_ == Mode::Approx) {
        char buf[64];
        std::snprintf(buf, sizeof(buf), "~(%.12g,%.12g)", a_.real(), a_.imag());
        return buf;
    }
    static const char* basis[4] = {"", "*Z8", "*I", "*Z8^3"};
    std::string out;
    for (int k = 0; k < 4; ++k) {
        const Q& c = c_[static_cast<size_t>(k)];
        if (c == 0) continue;
        std::string term = c.get_str() + basis[k];
        if (out.empty()) {
            out = term;
        } else if (c > 0) {
            out += " + " + term;
        } else {
            out += " - " + Q(-c).get_str() + basis[k];
        }
    }
    return out.empty() ? "0" : out;
}

}  // namespace ev8
