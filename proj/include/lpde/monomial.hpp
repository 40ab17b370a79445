#pragma once

#include <algorithm>
#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace lpde {

inline constexpr std::size_t kMaxVars = 32;

using Exponent = std::uint16_t;

/// Exponent vector of a monomial. Storage is fixed-size; only the first
/// `nvars` slots of the owning ring are ever nonzero.
class Monomial {
public:
    Monomial() { exps_.fill(0); }

    static Monomial variable(std::size_t i, Exponent e = 1) {
        Monomial m;
        m.set(i, e);
        return m;
    }

    Exponent operator[](std::size_t i) const { return exps_[i]; }

    void set(std::size_t i, Exponent e) {
        degree_ = degree_ - exps_[i] + e;
        exps_[i] = e;
    }

    unsigned degree() const { return degree_; }
    bool is_one() const { return degree_ == 0; }

    Monomial operator*(const Monomial& o) const {
        Monomial r;
        for (std::size_t i = 0; i < kMaxVars; ++i) r.exps_[i] = exps_[i] + o.exps_[i];
        r.degree_ = degree_ + o.degree_;
        return r;
    }

    bool divides(const Monomial& o) const {
        if (degree_ > o.degree_) return false;
        for (std::size_t i = 0; i < kMaxVars; ++i)
            if (exps_[i] > o.exps_[i]) return false;
        return true;
    }

    /// o / *this, assuming divides(o).
    Monomial quotient_of(const Monomial& o) const {
        Monomial r;
        for (std::size_t i = 0; i < kMaxVars; ++i) r.exps_[i] = o.exps_[i] - exps_[i];
        r.degree_ = o.degree_ - degree_;
        return r;
    }

    Monomial lcm(const Monomial& o) const {
        Monomial r;
        unsigned d = 0;
        for (std::size_t i = 0; i < kMaxVars; ++i) {
            r.exps_[i] = std::max(exps_[i], o.exps_[i]);
            d += r.exps_[i];
        }
        r.degree_ = d;
        return r;
    }

    Monomial gcd(const Monomial& o) const {
        Monomial r;
        unsigned d = 0;
        for (std::size_t i = 0; i < kMaxVars; ++i) {
            r.exps_[i] = std::min(exps_[i], o.exps_[i]);
            d += r.exps_[i];
        }
        r.degree_ = d;
        return r;
    }

    bool coprime(const Monomial& o) const {
        for (std::size_t i = 0; i < kMaxVars; ++i)
            if (exps_[i] != 0 && o.exps_[i] != 0) return false;
        return true;
    }

    /// True when every variable with positive exponent lies in `mask`.
    bool supported_in(std::uint32_t mask) const {
        for (std::size_t i = 0; i < kMaxVars; ++i)
            if (exps_[i] != 0 && !(mask & (std::uint32_t{1} << i))) return false;
        return true;
    }

    std::uint32_t support() const {
        std::uint32_t s = 0;
        for (std::size_t i = 0; i < kMaxVars; ++i)
            if (exps_[i] != 0) s |= std::uint32_t{1} << i;
        return s;
    }

    friend bool operator==(const Monomial& a, const Monomial& b) {
        return a.degree_ == b.degree_ && a.exps_ == b.exps_;
    }

    std::size_t hash() const {
        std::size_t h = degree_;
        for (std::size_t i = 0; i < kMaxVars; ++i) h = h * 131 + exps_[i];
        return h;
    }

private:
    std::array<Exponent, kMaxVars> exps_;
    unsigned degree_ = 0;
};

struct MonomialHash {
    std::size_t operator()(const Monomial& m) const { return m.hash(); }
};

/// Monomial order given as an ordered partition of the variables into
/// blocks. Each block is compared by grevlex; ties fall through to the next
/// block. One block is grevlex, singleton blocks give lex, and a leading
/// block of variables yields an elimination order for them.
class MonomialOrder {
public:
    enum class Kind { grevlex, lex, block };

    MonomialOrder() = default;

    static MonomialOrder grevlex(std::size_t n) {
        std::vector<std::size_t> all(n);
        std::iota(all.begin(), all.end(), 0);
        return MonomialOrder(Kind::grevlex, n, {all});
    }

    static MonomialOrder lex(std::size_t n) {
        std::vector<std::vector<std::size_t>> blocks;
        for (std::size_t i = 0; i < n; ++i) blocks.push_back({i});
        return MonomialOrder(Kind::lex, n, std::move(blocks));
    }

    /// The variables in `front` form the first block; the rest follow as one
    /// grevlex block.
    static MonomialOrder elimination(std::size_t n, const std::vector<std::size_t>& front) {
        std::vector<std::size_t> rest;
        for (std::size_t i = 0; i < n; ++i)
            if (std::find(front.begin(), front.end(), i) == front.end()) rest.push_back(i);
        std::vector<std::vector<std::size_t>> blocks;
        if (!front.empty()) blocks.push_back(front);
        if (!rest.empty()) blocks.push_back(rest);
        return MonomialOrder(Kind::block, n, std::move(blocks));
    }

    static MonomialOrder blocks(std::size_t n, std::vector<std::vector<std::size_t>> bs) {
        return MonomialOrder(Kind::block, n, std::move(bs));
    }

    std::size_t nvars() const { return nvars_; }
    Kind kind() const { return kind_; }
    const std::vector<std::vector<std::size_t>>& block_list() const { return blocks_; }

    /// Three-way comparison: negative, zero, positive.
    int compare(const Monomial& a, const Monomial& b) const {
        return compare_blocks(a, b, 0, blocks_.size());
    }

    /// Comparison restricted to blocks [from, to).
    int compare_blocks(const Monomial& a, const Monomial& b, std::size_t from, std::size_t to) const {
        for (std::size_t bi = from; bi < to && bi < blocks_.size(); ++bi) {
            const auto& blk = blocks_[bi];
            unsigned da = 0, db = 0;
            for (std::size_t v : blk) {
                da += a[v];
                db += b[v];
            }
            if (da != db) return da < db ? -1 : 1;
            // reverse lexicographic: the last variable with differing
            // exponent decides, smaller exponent wins
            for (std::size_t j = blk.size(); j-- > 0;) {
                std::size_t v = blk[j];
                if (a[v] != b[v]) return a[v] < b[v] ? 1 : -1;
            }
        }
        return 0;
    }

    friend bool operator==(const MonomialOrder& a, const MonomialOrder& b) {
        return a.nvars_ == b.nvars_ && a.blocks_ == b.blocks_;
    }

private:
    MonomialOrder(Kind k, std::size_t n, std::vector<std::vector<std::size_t>> bs)
        : kind_(k), nvars_(n), blocks_(std::move(bs)) {
        if (n > kMaxVars) throw std::invalid_argument("too many ring variables (max 32)");
    }

    Kind kind_ = Kind::grevlex;
    std::size_t nvars_ = 0;
    std::vector<std::vector<std::size_t>> blocks_;
};

enum class Ordering { less, equal, greater };

inline Ordering compare_monomials(const Monomial& u, const Monomial& v, const MonomialOrder& ord) {
    int c = ord.compare(u, v);
    return c < 0 ? Ordering::less : (c > 0 ? Ordering::greater : Ordering::equal);
}

}  // namespace lpde
