#pragma once

#include <algorithm>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "lpde/field.hpp"
#include "lpde/monomial.hpp"

namespace lpde {

/// A polynomial ring F[x_1..x_n] with a fixed monomial order. Variable
/// identity is positional; names are display metadata.
template <class F>
class PolyRing {
public:
    using Field = F;
    using Element = typename F::Element;

    PolyRing(F field, std::vector<std::string> names, MonomialOrder order)
        : field_(std::move(field)), names_(std::move(names)), order_(std::move(order)) {
        if (names_.size() > kMaxVars) throw InputError("too many ring variables (max 32)");
        if (order_.nvars() != names_.size()) throw std::invalid_argument("order arity mismatch");
    }

    static std::shared_ptr<const PolyRing> make(F field, std::vector<std::string> names) {
        auto n = names.size();
        return std::make_shared<const PolyRing>(std::move(field), std::move(names),
                                                MonomialOrder::grevlex(n));
    }

    static std::shared_ptr<const PolyRing> make(F field, std::vector<std::string> names,
                                                MonomialOrder order) {
        return std::make_shared<const PolyRing>(std::move(field), std::move(names),
                                                std::move(order));
    }

    const F& field() const { return field_; }
    std::size_t nvars() const { return names_.size(); }
    const std::vector<std::string>& names() const { return names_; }
    const std::string& name(std::size_t i) const { return names_[i]; }
    const MonomialOrder& order() const { return order_; }

    std::shared_ptr<const PolyRing> with_order(MonomialOrder ord) const {
        return make(field_, names_, std::move(ord));
    }

    std::optional<std::size_t> index_of(const std::string& name) const {
        for (std::size_t i = 0; i < names_.size(); ++i)
            if (names_[i] == name) return i;
        return std::nullopt;
    }

    bool same_as(const PolyRing& o) const {
        return this == &o || (names_ == o.names_ && order_ == o.order_ && field_ == o.field_);
    }

private:
    F field_;
    std::vector<std::string> names_;
    MonomialOrder order_;
};

template <class F>
using RingPtr = std::shared_ptr<const PolyRing<F>>;

template <class F>
struct Term {
    Monomial mono;
    typename F::Element coeff;
};

/// Sparse polynomial, terms kept strictly descending in the ring's order
/// with no zero coefficients.
template <class F>
class Polynomial {
public:
    using Element = typename F::Element;
    using TermT = Term<F>;

    Polynomial() = default;
    explicit Polynomial(RingPtr<F> ring) : ring_(std::move(ring)) {}

    static Polynomial constant(RingPtr<F> ring, Element c) {
        Polynomial p(std::move(ring));
        if (!p.field().is_zero(c)) p.terms_.push_back({Monomial(), std::move(c)});
        return p;
    }

    static Polynomial constant(RingPtr<F> ring, long c) {
        auto e = ring->field().from_int(c);
        return constant(std::move(ring), std::move(e));
    }

    static Polynomial variable(RingPtr<F> ring, std::size_t i) {
        if (i >= ring->nvars()) throw std::out_of_range("variable index out of range");
        Polynomial p(ring);
        p.terms_.push_back({Monomial::variable(i), ring->field().one()});
        return p;
    }

    static Polynomial monomial(RingPtr<F> ring, const Monomial& m, Element c) {
        Polynomial p(std::move(ring));
        if (!p.field().is_zero(c)) p.terms_.push_back({m, std::move(c)});
        return p;
    }

    /// Builds a canonical polynomial from terms in arbitrary order with
    /// possible repetitions and zeros.
    static Polynomial from_terms(RingPtr<F> ring, std::vector<TermT> terms) {
        Polynomial p(std::move(ring));
        const auto& ord = p.ring_->order();
        std::sort(terms.begin(), terms.end(), [&](const TermT& a, const TermT& b) {
            return ord.compare(a.mono, b.mono) > 0;
        });
        const auto& fld = p.field();
        for (auto& t : terms) {
            if (!p.terms_.empty() && p.terms_.back().mono == t.mono) {
                p.terms_.back().coeff = fld.add(p.terms_.back().coeff, t.coeff);
            } else {
                if (!p.terms_.empty() && fld.is_zero(p.terms_.back().coeff)) p.terms_.pop_back();
                p.terms_.push_back(std::move(t));
            }
        }
        if (!p.terms_.empty() && fld.is_zero(p.terms_.back().coeff)) p.terms_.pop_back();
        return p;
    }

    /// Trusts that `terms` are already canonical.
    static Polynomial from_sorted(RingPtr<F> ring, std::vector<TermT> terms) {
        Polynomial p(std::move(ring));
        p.terms_ = std::move(terms);
        return p;
    }

    const RingPtr<F>& ring() const { return ring_; }
    const F& field() const { return ring_->field(); }
    const std::vector<TermT>& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.is_one()); }

    const Monomial& leading_monomial() const { return terms_.front().mono; }
    const Element& leading_coeff() const { return terms_.front().coeff; }

    Element constant_term() const {
        if (!terms_.empty() && terms_.back().mono.is_one()) return terms_.back().coeff;
        return field().zero();
    }

    int degree() const {
        int d = -1;
        for (const auto& t : terms_) d = std::max<int>(d, static_cast<int>(t.mono.degree()));
        return d;
    }

    int degree_in(std::size_t i) const {
        int d = -1;
        for (const auto& t : terms_) d = std::max<int>(d, t.mono[i]);
        return d;
    }

    std::uint32_t support() const {
        std::uint32_t s = 0;
        for (const auto& t : terms_) s |= t.mono.support();
        return s;
    }

    bool is_homogeneous() const {
        for (const auto& t : terms_)
            if (t.mono.degree() != terms_.front().mono.degree()) return false;
        return true;
    }

    Polynomial operator-() const {
        Polynomial r(*this);
        for (auto& t : r.terms_) t.coeff = field().neg(t.coeff);
        return r;
    }

    friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
        check_same_ring(a, b);
        return merge(a, b, false);
    }

    friend Polynomial operator-(const Polynomial& a, const Polynomial& b) {
        check_same_ring(a, b);
        return merge(a, b, true);
    }

    friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
        check_same_ring(a, b);
        if (a.is_zero() || b.is_zero()) return Polynomial(a.ring_);
        if (b.terms_.size() == 1) return a.mul_term(b.terms_[0].coeff, b.terms_[0].mono);
        if (a.terms_.size() == 1) return b.mul_term(a.terms_[0].coeff, a.terms_[0].mono);
        const auto& fld = a.field();
        std::vector<TermT> out;
        out.reserve(a.terms_.size() * b.terms_.size());
        for (const auto& s : a.terms_)
            for (const auto& t : b.terms_) out.push_back({s.mono * t.mono, fld.mul(s.coeff, t.coeff)});
        return from_terms(a.ring_, std::move(out));
    }

    Polynomial& operator+=(const Polynomial& o) { return *this = *this + o; }
    Polynomial& operator-=(const Polynomial& o) { return *this = *this - o; }
    Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }

    Polynomial scaled(const Element& c) const {
        if (field().is_zero(c)) return Polynomial(ring_);
        Polynomial r(*this);
        for (auto& t : r.terms_) t.coeff = field().mul(t.coeff, c);
        return r;
    }

    /// c * m * this; monomial multiplication preserves term order.
    Polynomial mul_term(const Element& c, const Monomial& m) const {
        if (field().is_zero(c)) return Polynomial(ring_);
        Polynomial r(ring_);
        r.terms_.reserve(terms_.size());
        for (const auto& t : terms_) r.terms_.push_back({t.mono * m, field().mul(t.coeff, c)});
        return r;
    }

    Polynomial pow(unsigned e) const {
        Polynomial result = constant(ring_, field().one());
        Polynomial base = *this;
        while (e) {
            if (e & 1) result *= base;
            e >>= 1;
            if (e) base *= base;
        }
        return result;
    }

    /// Divides by the leading coefficient.
    Polynomial monic() const {
        if (is_zero()) return *this;
        return scaled(field().inv(leading_coeff()));
    }

    Element coefficient(const Monomial& m) const {
        for (const auto& t : terms_)
            if (t.mono == m) return t.coeff;
        return field().zero();
    }

    friend bool operator==(const Polynomial& a, const Polynomial& b) {
        if (a.terms_.size() != b.terms_.size()) return false;
        const auto& fld = a.terms_.empty() ? b.ring_->field() : a.field();
        for (std::size_t i = 0; i < a.terms_.size(); ++i) {
            if (!(a.terms_[i].mono == b.terms_[i].mono)) return false;
            if (!fld.equal(a.terms_[i].coeff, b.terms_[i].coeff)) return false;
        }
        return true;
    }

    /// Same polynomial re-expressed in a ring with identical variables but
    /// another order (or a ring whose first variables extend this one).
    Polynomial in_ring(const RingPtr<F>& target) const {
        return from_terms(target, std::vector<TermT>(terms_.begin(), terms_.end()));
    }

    /// Reindexes variables: variable i goes to index map[i] in `target`.
    Polynomial remap(const RingPtr<F>& target, const std::vector<std::size_t>& map) const {
        std::vector<TermT> out;
        out.reserve(terms_.size());
        for (const auto& t : terms_) {
            Monomial m;
            for (std::size_t i = 0; i < ring_->nvars(); ++i)
                if (t.mono[i]) m.set(map[i], t.mono[i]);
            out.push_back({m, t.coeff});
        }
        return from_terms(target, std::move(out));
    }

    std::string to_string(bool compact = false) const;

    /// Total order for canonical sorting of polynomials: compare term by
    /// term (monomial first, then coefficient); a proper prefix is smaller.
    int canonical_compare(const Polynomial& o) const {
        const auto& ord = ring_->order();
        std::size_t n = std::min(terms_.size(), o.terms_.size());
        for (std::size_t i = 0; i < n; ++i) {
            int c = ord.compare(terms_[i].mono, o.terms_[i].mono);
            if (c != 0) return c;
            int d = field().compare(terms_[i].coeff, o.terms_[i].coeff);
            if (d != 0) return d;
        }
        if (terms_.size() == o.terms_.size()) return 0;
        return terms_.size() < o.terms_.size() ? -1 : 1;
    }

private:
    static void check_same_ring(const Polynomial& a, const Polynomial& b) {
        if (!a.ring_ || !b.ring_) throw std::invalid_argument("polynomial without ring");
        if (a.ring_ != b.ring_ && !a.ring_->same_as(*b.ring_))
            throw std::invalid_argument("ring mismatch");
    }

    static Polynomial merge(const Polynomial& a, const Polynomial& b, bool subtract) {
        const auto& fld = a.field();
        const auto& ord = a.ring_->order();
        Polynomial r(a.ring_);
        r.terms_.reserve(a.terms_.size() + b.terms_.size());
        std::size_t i = 0, j = 0;
        while (i < a.terms_.size() && j < b.terms_.size()) {
            int c = ord.compare(a.terms_[i].mono, b.terms_[j].mono);
            if (c > 0) {
                r.terms_.push_back(a.terms_[i++]);
            } else if (c < 0) {
                const auto& t = b.terms_[j++];
                r.terms_.push_back({t.mono, subtract ? fld.neg(t.coeff) : t.coeff});
            } else {
                auto s = subtract ? fld.sub(a.terms_[i].coeff, b.terms_[j].coeff)
                                  : fld.add(a.terms_[i].coeff, b.terms_[j].coeff);
                if (!fld.is_zero(s)) r.terms_.push_back({a.terms_[i].mono, std::move(s)});
                ++i;
                ++j;
            }
        }
        for (; i < a.terms_.size(); ++i) r.terms_.push_back(a.terms_[i]);
        for (; j < b.terms_.size(); ++j) {
            const auto& t = b.terms_[j];
            r.terms_.push_back({t.mono, subtract ? fld.neg(t.coeff) : t.coeff});
        }
        return r;
    }

    RingPtr<F> ring_;
    std::vector<TermT> terms_;
};

template <class F>
std::string format_monomial(const PolyRing<F>& ring, const Monomial& m) {
    std::string s;
    for (std::size_t i = 0; i < ring.nvars(); ++i) {
        if (!m[i]) continue;
        if (!s.empty()) s += '*';
        s += ring.name(i);
        if (m[i] > 1) s += '^' + std::to_string(m[i]);
    }
    return s;
}

/// Prints in the expression grammar accepted by the parser. The compact form
/// drops the spaces around binary + and -.
template <class F>
std::string Polynomial<F>::to_string(bool compact) const {
    if (terms_.empty()) return "0";
    const auto& fld = field();
    std::ostringstream os;
    bool first = true;
    for (const auto& t : terms_) {
        bool neg = fld.is_negative(t.coeff);
        auto mag = neg ? fld.neg(t.coeff) : t.coeff;
        if (first) {
            if (neg) os << '-';
        } else {
            os << (compact ? (neg ? "-" : "+") : (neg ? " - " : " + "));
        }
        first = false;
        std::string ms = format_monomial(*ring_, t.mono);
        if (ms.empty()) {
            std::string cs = fld.to_string(mag);
            os << (fld.is_atomic(mag) ? cs : "(" + cs + ")");
        } else if (fld.is_one(mag)) {
            os << ms;
        } else {
            std::string cs = fld.to_string(mag);
            os << (fld.is_atomic(mag) ? cs : "(" + cs + ")") << '*' << ms;
        }
    }
    return os.str();
}

template <class F>
std::ostream& operator<<(std::ostream& os, const Polynomial<F>& p) {
    return os << p.to_string();
}

/// Formal partial derivative with respect to variable i.
template <class F>
Polynomial<F> differentiate(const Polynomial<F>& p, std::size_t i) {
    if (i >= p.ring()->nvars()) throw std::out_of_range("differentiate: variable index out of range");
    const auto& fld = p.field();
    std::vector<Term<F>> out;
    for (const auto& t : p.terms()) {
        if (!t.mono[i]) continue;
        Monomial m = t.mono;
        m.set(i, t.mono[i] - 1);
        out.push_back({m, fld.mul(t.coeff, fld.from_int(t.mono[i]))});
    }
    // lowering one exponent can reorder terms under non-degree orders
    return Polynomial<F>::from_terms(p.ring(), std::move(out));
}

/// d^e/dx^e applied to one monomial: returns the falling-factorial scalar
/// and the new monomial, or nothing when the result vanishes.
inline std::optional<std::pair<Integer, Monomial>> derive_monomial(const Monomial& target,
                                                                   const Monomial& ops,
                                                                   std::size_t nvars) {
    Integer scale = 1;
    Monomial m = target;
    for (std::size_t i = 0; i < nvars; ++i) {
        unsigned s = ops[i];
        if (!s) continue;
        unsigned a = target[i];
        if (s > a) return std::nullopt;
        for (unsigned j = 0; j < s; ++j) scale *= (a - j);
        m.set(i, static_cast<Exponent>(a - s));
    }
    return std::make_pair(scale, m);
}

/// p(d) . q where variable i of p acts as the partial derivative with
/// respect to variable i of q.
template <class F>
Polynomial<F> apply_operator(const Polynomial<F>& op, const Polynomial<F>& q) {
    if (op.ring()->nvars() != q.ring()->nvars())
        throw std::invalid_argument("apply_operator: arity mismatch");
    const auto& fld = q.field();
    std::vector<Term<F>> out;
    for (const auto& o : op.terms()) {
        for (const auto& t : q.terms()) {
            auto d = derive_monomial(t.mono, o.mono, q.ring()->nvars());
            if (!d) continue;
            auto c = fld.mul(fld.mul(o.coeff, t.coeff), fld.from_rational(Rational(d->first)));
            out.push_back({d->second, std::move(c)});
        }
    }
    return Polynomial<F>::from_terms(q.ring(), std::move(out));
}

/// Applies a coefficient map and a variable substitution: each variable i
/// is replaced by images[i] (a polynomial in the target ring), each
/// coefficient c by coeff_map(c) viewed as a constant of the target ring.
template <class F, class G, class CoeffMap>
Polynomial<G> substitute(const Polynomial<F>& p, const RingPtr<G>& target,
                         const std::vector<Polynomial<G>>& images, CoeffMap coeff_map) {
    const auto& tf = target->field();
    Polynomial<G> result(target);
    // cache powers per variable
    std::vector<std::vector<Polynomial<G>>> powers(images.size());
    auto power = [&](std::size_t i, unsigned e) -> const Polynomial<G>& {
        auto& cache = powers[i];
        if (cache.empty()) cache.push_back(Polynomial<G>::constant(target, tf.one()));
        while (cache.size() <= e) cache.push_back(cache.back() * images[i]);
        return cache[e];
    };
    for (const auto& t : p.terms()) {
        Polynomial<G> term = Polynomial<G>::constant(target, coeff_map(t.coeff));
        for (std::size_t i = 0; i < p.ring()->nvars(); ++i)
            if (t.mono[i]) term *= power(i, t.mono[i]);
        result += term;
    }
    return result;
}

template <class F>
Polynomial<F> evaluate_partial(const Polynomial<F>& p, std::size_t var, const typename F::Element& value) {
    const auto& fld = p.field();
    std::vector<Term<F>> out;
    for (const auto& t : p.terms()) {
        auto c = t.coeff;
        for (unsigned j = 0; j < t.mono[var]; ++j) c = fld.mul(c, value);
        Monomial m = t.mono;
        m.set(var, 0);
        out.push_back({m, c});
    }
    return Polynomial<F>::from_terms(p.ring(), std::move(out));
}

/// Evaluates every variable; returns a field element.
template <class F>
typename F::Element evaluate(const Polynomial<F>& p, const std::vector<typename F::Element>& point) {
    const auto& fld = p.field();
    auto acc = fld.zero();
    for (const auto& t : p.terms()) {
        auto c = t.coeff;
        for (std::size_t i = 0; i < p.ring()->nvars(); ++i)
            for (unsigned j = 0; j < t.mono[i]; ++j) c = fld.mul(c, point[i]);
        acc = fld.add(acc, c);
    }
    return acc;
}

using QRing = PolyRing<RationalField>;
using QRingPtr = RingPtr<RationalField>;
using QPoly = Polynomial<RationalField>;

inline QRingPtr make_qring(std::vector<std::string> names) {
    return QRing::make(RationalField{}, std::move(names));
}

inline QRingPtr make_qring(std::vector<std::string> names, MonomialOrder ord) {
    return QRing::make(RationalField{}, std::move(names), std::move(ord));
}

/// Makes rational coefficients integral and coprime, keeping the sign.
inline QPoly primitive_part(const QPoly& p) {
    if (p.is_zero()) return p;
    Integer num_gcd = 0, den_lcm = 1;
    for (const auto& t : p.terms()) {
        num_gcd = integer_gcd(num_gcd, t.coeff.get_num());
        den_lcm = integer_lcm(den_lcm, t.coeff.get_den());
    }
    return p.scaled(Rational(den_lcm, num_gcd));
}

}  // namespace lpde
