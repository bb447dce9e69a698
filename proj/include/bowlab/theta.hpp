#pragma once

// Numerical odd Jacobi theta function in multiplicative convention,
//    theta(x) = (x^{1/2} - x^{-1/2}) prod_{k>=1} (1 - q^k x)(1 - q^k / x),
// evaluation contexts holding chosen logarithms (no runtime branch cuts),
// and evaluable theta-expression trees.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "bowlab/character.hpp"

namespace bowlab {

using cplx = std::complex<double>;

constexpr std::uint64_t kDefaultSeed = 0x4230574C4142ULL;  // ASCII "B0WLAB"

struct EvalContext {
    cplx q{0.3, 0.0};
    std::vector<cplx> log_a;
    std::vector<cplx> log_z;
    cplx log_h{0.0, 0.0};
    std::optional<cplx> log_t;
    double tol = 1e-15;

    cplx log_of(const Monomial& m) const {
        cplx acc{0.0, 0.0};
        if (m.t != 0) {
            if (!log_t) throw error("EvalContext: monomial uses t but no t value is set");
            acc += static_cast<double>(m.t) * (*log_t);
        }
        for (std::size_t i = 0; i < m.a.size(); ++i) {
            if (m.a[i] == 0) continue;
            if (i >= log_a.size()) throw error("EvalContext: a slot out of range");
            acc += static_cast<double>(m.a[i]) * log_a[i];
        }
        for (std::size_t i = 0; i < m.z.size(); ++i) {
            if (m.z[i] == 0) continue;
            if (i >= log_z.size()) throw error("EvalContext: z slot out of range");
            acc += static_cast<double>(m.z[i]) * log_z[i];
        }
        acc += static_cast<double>(m.h) * log_h;
        return acc;
    }
    cplx value_of(const Monomial& m) const { return std::exp(log_of(m)); }

    EvalContext with_t(cplx lt) const {
        EvalContext c = *this;
        c.log_t = lt;
        return c;
    }
    // z_i -> z_i * h^{shift_i}
    EvalContext with_z_shift(const std::vector<int>& shift) const {
        EvalContext c = *this;
        for (std::size_t i = 0; i < shift.size() && i < c.log_z.size(); ++i)
            c.log_z[i] += static_cast<double>(shift[i]) * c.log_h;
        return c;
    }
    // z_i -> z_i^{-1} h^{r_i}  (the Kahler shift of the duality statement)
    EvalContext with_z_inverted(const std::vector<int>& r) const {
        EvalContext c = *this;
        for (std::size_t i = 0; i < c.log_z.size(); ++i) {
            c.log_z[i] = -c.log_z[i];
            if (i < r.size()) c.log_z[i] += static_cast<double>(r[i]) * c.log_h;
        }
        return c;
    }
    // a_i -> a_i * h^{shift_i}
    EvalContext with_a_shift(const std::vector<int>& shift) const {
        EvalContext c = *this;
        for (std::size_t i = 0; i < shift.size() && i < c.log_a.size(); ++i)
            c.log_a[i] += static_cast<double>(shift[i]) * c.log_h;
        return c;
    }
    // the 3d mirror swap (a, z, h) -> (z, a, h^{-1})
    EvalContext mirrored() const {
        EvalContext c = *this;
        std::swap(c.log_a, c.log_z);
        c.log_h = -c.log_h;
        return c;
    }
};

// Deterministic random contexts: q = 0.3, Re(log) in [-0.2, 0.2], Im(log) in
// (-pi, pi], fixed RNG (mt19937_64 with manually mapped doubles).
inline EvalContext random_context(int n_a, int n_z, std::uint64_t seed, std::uint64_t index = 0) {
    std::mt19937_64 rng(seed * 0x9E3779B97F4A7C15ULL + index + 1);
    rng.discard(8);
    auto u01 = [&]() { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
    auto draw = [&]() {
        double re = -0.2 + 0.4 * u01();
        double im = -3.14159265358979323846 + 2 * 3.14159265358979323846 * u01();
        return cplx(re, im);
    };
    EvalContext ctx;
    ctx.q = cplx(0.3, 0.0);
    for (int i = 0; i < n_a; ++i) ctx.log_a.push_back(draw());
    for (int i = 0; i < n_z; ++i) ctx.log_z.push_back(draw());
    ctx.log_h = draw();
    return ctx;
}

// ---------------------------------------------------------------------------
// theta itself, on logarithms.  Exact zero at log x = 0.

inline cplx theta_log(cplx log_x, const EvalContext& ctx) {
    if (std::abs(ctx.q) >= 1.0) throw error("theta: |q| must be < 1");
    cplx x = std::exp(log_x);
    cplx lead = std::exp(0.5 * log_x) - std::exp(-0.5 * log_x);
    cplx prod{1.0, 0.0};
    cplx qk{1.0, 0.0};
    for (int k = 1; k <= 20000; ++k) {
        qk *= ctx.q;
        cplx f1 = 1.0 - qk * x;
        cplx f2 = 1.0 - qk / x;
        prod *= f1 * f2;
        if (std::abs(qk * x) < ctx.tol && std::abs(qk / x) < ctx.tol) break;
        if (k == 20000) throw error("theta: product did not truncate");
    }
    return lead * prod;
}

inline cplx theta(const Monomial& m, const EvalContext& ctx) {
    if (m.is_unit()) return cplx{0.0, 0.0};
    return theta_log(ctx.log_of(m), ctx);
}

// ---------------------------------------------------------------------------
// Substitutions: per-slot monomial images, identity where unspecified.

struct Substitution {
    std::optional<Monomial> t_image;
    std::map<int, Monomial> a_image;  // 1-based slot -> image
    std::map<int, Monomial> z_image;
    std::optional<Monomial> h_image;

    Monomial apply(const Monomial& m) const {
        Monomial out;
        auto mul_pow = [&out](const Monomial& base, int e) {
            if (e != 0) out *= base.pow(e);
        };
        if (m.t != 0) {
            if (t_image) mul_pow(*t_image, m.t);
            else out *= Monomial::t_pow(m.t);
        }
        for (std::size_t i = 0; i < m.a.size(); ++i) {
            if (m.a[i] == 0) continue;
            auto it = a_image.find(static_cast<int>(i) + 1);
            if (it != a_image.end()) mul_pow(it->second, m.a[i]);
            else out *= Monomial::a_var(static_cast<int>(i) + 1, m.a[i]);
        }
        for (std::size_t i = 0; i < m.z.size(); ++i) {
            if (m.z[i] == 0) continue;
            auto it = z_image.find(static_cast<int>(i) + 1);
            if (it != z_image.end()) mul_pow(it->second, m.z[i]);
            else out *= Monomial::z_var(static_cast<int>(i) + 1, m.z[i]);
        }
        if (m.h != 0) {
            if (h_image) mul_pow(*h_image, m.h);
            else out *= Monomial::h_pow(m.h);
        }
        return out;
    }

    // The swap a_i <-> z_i, h -> h^{-1} on n_a a-slots and n_z z-slots.
    static Substitution mirror_swap(int n_a, int n_z) {
        Substitution s;
        for (int i = 1; i <= n_a; ++i) s.a_image[i] = Monomial::z_var(i);
        for (int i = 1; i <= n_z; ++i) s.z_image[i] = Monomial::a_var(i);
        s.h_image = Monomial::h_pow(-1);
        return s;
    }
    // relabel a-slots by a permutation sigma (1-based): a_i -> a_{sigma(i)}
    static Substitution a_relabel(const std::vector<int>& sigma) {
        Substitution s;
        for (std::size_t i = 0; i < sigma.size(); ++i)
            s.a_image[static_cast<int>(i) + 1] = Monomial::a_var(sigma[i]);
        return s;
    }
};

// ---------------------------------------------------------------------------
// Expression trees over theta factors.

class ThetaExpr {
public:
    enum class Op { Theta, Mono, Const, Product, Quotient, Power, Sum };

    ThetaExpr() : ThetaExpr(constant(1.0)) {}

    static ThetaExpr theta_of(const Monomial& m) { return mk(Op::Theta, m); }
    static ThetaExpr mono(const Monomial& m) { return mk(Op::Mono, m); }
    static ThetaExpr constant(cplx v) {
        ThetaExpr e = mk(Op::Const, Monomial::unit());
        const_cast<Node*>(e.n_.get())->scalar = v;
        return e;
    }
    static ThetaExpr product(std::vector<ThetaExpr> kids) {
        ThetaExpr e = mk(Op::Product, Monomial::unit());
        const_cast<Node*>(e.n_.get())->kids = std::move(kids);
        return e;
    }
    static ThetaExpr quotient(ThetaExpr num, ThetaExpr den) {
        ThetaExpr e = mk(Op::Quotient, Monomial::unit());
        const_cast<Node*>(e.n_.get())->kids = {std::move(num), std::move(den)};
        return e;
    }
    static ThetaExpr power(ThetaExpr base, int k) {
        ThetaExpr e = mk(Op::Power, Monomial::unit());
        const_cast<Node*>(e.n_.get())->kids = {std::move(base)};
        const_cast<Node*>(e.n_.get())->ipow = k;
        return e;
    }
    static ThetaExpr sum(std::vector<std::pair<cplx, ThetaExpr>> terms) {
        ThetaExpr e = mk(Op::Sum, Monomial::unit());
        const_cast<Node*>(e.n_.get())->sum_terms = std::move(terms);
        return e;
    }

    Op op() const { return n_->op; }
    const Monomial& arg() const { return n_->mono; }
    cplx scalar() const { return n_->scalar; }
    int ipow() const { return n_->ipow; }
    const std::vector<ThetaExpr>& kids() const { return n_->kids; }
    const std::vector<std::pair<cplx, ThetaExpr>>& sum_terms() const { return n_->sum_terms; }

    cplx eval(const EvalContext& ctx) const {
        switch (n_->op) {
            case Op::Theta:
                return theta(n_->mono, ctx);
            case Op::Mono:
                return ctx.value_of(n_->mono);
            case Op::Const:
                return n_->scalar;
            case Op::Product: {
                cplx acc{1.0, 0.0};
                for (const auto& k : n_->kids) acc *= k.eval(ctx);
                return acc;
            }
            case Op::Quotient: {
                cplx num = n_->kids[0].eval(ctx);
                cplx den = n_->kids[1].eval(ctx);
                if (std::abs(den) < 1e-250)
                    throw error("ThetaExpr: division by zero in " + n_->kids[1].to_string());
                return num / den;
            }
            case Op::Power: {
                cplx base = n_->kids[0].eval(ctx);
                return std::pow(base, n_->ipow);
            }
            case Op::Sum: {
                cplx acc{0.0, 0.0};
                for (const auto& [coeff, term] : n_->sum_terms) acc += coeff * term.eval(ctx);
                return acc;
            }
        }
        throw error("ThetaExpr: corrupt node");
    }

    ThetaExpr substituted(const Substitution& s) const {
        switch (n_->op) {
            case Op::Theta:
                return theta_of(s.apply(n_->mono));
            case Op::Mono:
                return mono(s.apply(n_->mono));
            case Op::Const:
                return *this;
            case Op::Product: {
                std::vector<ThetaExpr> kids;
                for (const auto& k : n_->kids) kids.push_back(k.substituted(s));
                return product(std::move(kids));
            }
            case Op::Quotient:
                return quotient(n_->kids[0].substituted(s), n_->kids[1].substituted(s));
            case Op::Power:
                return power(n_->kids[0].substituted(s), n_->ipow);
            case Op::Sum: {
                std::vector<std::pair<cplx, ThetaExpr>> terms;
                for (const auto& [c, t] : n_->sum_terms) terms.emplace_back(c, t.substituted(s));
                return sum(std::move(terms));
            }
        }
        throw error("ThetaExpr: corrupt node");
    }

    bool equals(const ThetaExpr& o) const {
        if (n_ == o.n_) return true;
        if (n_->op != o.n_->op) return false;
        if (!(n_->mono == o.n_->mono)) return false;
        if (n_->scalar != o.n_->scalar || n_->ipow != o.n_->ipow) return false;
        if (n_->kids.size() != o.n_->kids.size()) return false;
        for (std::size_t i = 0; i < n_->kids.size(); ++i)
            if (!n_->kids[i].equals(o.n_->kids[i])) return false;
        if (n_->sum_terms.size() != o.n_->sum_terms.size()) return false;
        for (std::size_t i = 0; i < n_->sum_terms.size(); ++i) {
            if (n_->sum_terms[i].first != o.n_->sum_terms[i].first) return false;
            if (!n_->sum_terms[i].second.equals(o.n_->sum_terms[i].second)) return false;
        }
        return true;
    }

    std::string to_string() const {
        std::ostringstream os;
        print(os);
        return os.str();
    }

private:
    struct Node {
        Op op;
        Monomial mono;
        cplx scalar{1.0, 0.0};
        int ipow = 1;
        std::vector<ThetaExpr> kids;
        std::vector<std::pair<cplx, ThetaExpr>> sum_terms;
    };
    std::shared_ptr<const Node> n_;

    static ThetaExpr mk(Op op, Monomial m) {
        ThetaExpr e(nullptr);
        auto node = std::make_shared<Node>();
        node->op = op;
        node->mono = std::move(m);
        e.n_ = std::move(node);
        return e;
    }

    ThetaExpr(std::nullptr_t) {}

    void print(std::ostringstream& os) const {
        auto mono_str = [](const Monomial& m) {
            std::string s;
            auto append = [&s](const std::string& v, int e) {
                if (e == 0) return;
                if (!s.empty()) s += " ";
                s += v;
                if (e != 1) s += "^" + std::to_string(e);
            };
            append("t", m.t);
            for (std::size_t i = 0; i < m.a.size(); ++i) append("a" + std::to_string(i + 1), m.a[i]);
            for (std::size_t i = 0; i < m.z.size(); ++i) append("z" + std::to_string(i + 1), m.z[i]);
            append("h", m.h);
            return s.empty() ? std::string("1") : s;
        };
        switch (n_->op) {
            case Op::Theta:
                os << "theta(" << mono_str(n_->mono) << ")";
                break;
            case Op::Mono:
                os << mono_str(n_->mono);
                break;
            case Op::Const:
                os << n_->scalar.real();
                if (n_->scalar.imag() != 0) os << "+" << n_->scalar.imag() << "i";
                break;
            case Op::Product:
                for (std::size_t i = 0; i < n_->kids.size(); ++i) {
                    if (i) os << " * ";
                    n_->kids[i].print(os);
                }
                break;
            case Op::Quotient:
                os << "(";
                n_->kids[0].print(os);
                os << ") / (";
                n_->kids[1].print(os);
                os << ")";
                break;
            case Op::Power:
                os << "(";
                n_->kids[0].print(os);
                os << ")^" << n_->ipow;
                break;
            case Op::Sum:
                for (std::size_t i = 0; i < n_->sum_terms.size(); ++i) {
                    if (i) os << " + ";
                    os << "(" << n_->sum_terms[i].first.real() << ")*";
                    n_->sum_terms[i].second.print(os);
                }
                break;
        }
    }
};

// ---------------------------------------------------------------------------
// Factored products of theta functions: the normal form of stable-envelope
// restrictions.  Cancellation of common factors resolves the 0/0 entries
// arising on resonance divisors before any numerics happen.

struct ThetaProduct {
    cplx scalar{1.0, 0.0};
    Monomial prefactor;
    std::vector<Monomial> num;  // theta factors
    std::vector<Monomial> den;

    static ThetaProduct one() { return {}; }

    ThetaProduct& operator*=(const ThetaProduct& o) {
        scalar *= o.scalar;
        prefactor *= o.prefactor;
        num.insert(num.end(), o.num.begin(), o.num.end());
        den.insert(den.end(), o.den.begin(), o.den.end());
        return *this;
    }
    friend ThetaProduct operator*(ThetaProduct x, const ThetaProduct& y) { return x *= y; }
    ThetaProduct& operator/=(const ThetaProduct& o) {
        scalar /= o.scalar;
        prefactor *= o.prefactor.inverse();
        num.insert(num.end(), o.den.begin(), o.den.end());
        den.insert(den.end(), o.num.begin(), o.num.end());
        return *this;
    }
    friend ThetaProduct operator/(ThetaProduct x, const ThetaProduct& y) { return x /= y; }

    ThetaProduct canceled() const {
        ThetaProduct out = *this;
        std::sort(out.num.begin(), out.num.end());
        std::sort(out.den.begin(), out.den.end());
        std::vector<Monomial> n2, d2;
        std::size_t i = 0, j = 0;
        while (i < out.num.size() && j < out.den.size()) {
            if (out.num[i] == out.den[j]) {
                ++i;
                ++j;
            } else if (out.num[i] < out.den[j]) {
                n2.push_back(out.num[i++]);
            } else {
                d2.push_back(out.den[j++]);
            }
        }
        for (; i < out.num.size(); ++i) n2.push_back(out.num[i]);
        for (; j < out.den.size(); ++j) d2.push_back(out.den[j]);
        out.num = std::move(n2);
        out.den = std::move(d2);
        return out;
    }

    // structurally zero: a theta(1) factor survives cancellation
    bool is_zero() const {
        for (const auto& m : num)
            if (m.is_unit()) return true;
        return false;
    }
    bool has_pole() const {
        for (const auto& m : den)
            if (m.is_unit()) return true;
        return false;
    }

    ThetaProduct substituted(const Substitution& s) const {
        ThetaProduct out;
        out.scalar = scalar;
        out.prefactor = s.apply(prefactor);
        for (const auto& m : num) out.num.push_back(s.apply(m));
        for (const auto& m : den) out.den.push_back(s.apply(m));
        return out;
    }

    cplx eval(const EvalContext& ctx) const {
        ThetaProduct c = canceled();
        if (c.is_zero() && !c.has_pole()) return cplx{0.0, 0.0};
        if (c.has_pole())
            throw error("ThetaProduct: theta(1) in denominator after cancellation");
        cplx acc = c.scalar * ctx.value_of(c.prefactor);
        for (const auto& m : c.num) acc *= theta(m, ctx);
        for (const auto& m : c.den) {
            cplx d = theta(m, ctx);
            if (std::abs(d) < 1e-250) throw error("ThetaProduct: denominator theta vanished");
            acc /= d;
        }
        return acc;
    }

    ThetaExpr to_expr() const {
        std::vector<ThetaExpr> nk, dk;
        if (scalar != cplx{1.0, 0.0}) nk.push_back(ThetaExpr::constant(scalar));
        if (!prefactor.is_unit()) nk.push_back(ThetaExpr::mono(prefactor));
        for (const auto& m : num) nk.push_back(ThetaExpr::theta_of(m));
        for (const auto& m : den) dk.push_back(ThetaExpr::theta_of(m));
        ThetaExpr numerator = nk.empty() ? ThetaExpr::constant(1.0) : ThetaExpr::product(nk);
        if (dk.empty()) return numerator;
        return ThetaExpr::quotient(numerator, ThetaExpr::product(dk));
    }
};

}  // namespace bowlab
