#pragma once

#include <cctype>
#include <functional>
#include <optional>
#include <string>
#include <string_view>

#include "lpde/polynomial.hpp"

namespace lpde {

/// Raised on malformed expressions; `position` is a 0-based byte offset.
class ParseError : public InputError {
public:
    ParseError(const std::string& what, std::size_t pos)
        : InputError(what + " at position " + std::to_string(pos)), position(pos) {}
    std::size_t position;
};

/// Resolves identifiers that are not ring variables (e.g. parameters of a
/// rational function field) to coefficients.
template <class F>
using ParamHook = std::function<std::optional<typename F::Element>(const std::string&)>;

namespace detail {

template <class F>
class ExprParser {
public:
    using P = Polynomial<F>;

    ExprParser(const RingPtr<F>& ring, std::string_view text, ParamHook<F> hook)
        : ring_(ring), text_(text), hook_(std::move(hook)) {}

    P parse() {
        P p = parse_sum();
        skip_ws();
        if (pos_ != text_.size()) fail("unexpected character '" + std::string(1, text_[pos_]) + "'");
        return p;
    }

private:
    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos_); }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool accept(char c) {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    P parse_sum() {
        P acc = parse_product();
        for (;;) {
            if (accept('+')) acc += parse_product();
            else if (accept('-')) acc -= parse_product();
            else return acc;
        }
    }

    P parse_product() {
        P acc = parse_unary();
        for (;;) {
            if (accept('*')) {
                acc *= parse_unary();
            } else if (accept('/')) {
                std::size_t at = pos_;
                P d = parse_unary();
                if (!d.is_constant() || d.is_zero()) {
                    pos_ = at;
                    fail("division by a non-constant or zero");
                }
                acc = acc.scaled(ring_->field().inv(d.constant_term()));
            } else {
                return acc;
            }
        }
    }

    P parse_unary() {
        if (accept('-')) return -parse_unary();
        if (accept('+')) return parse_unary();
        return parse_power();
    }

    P parse_power() {
        P base = parse_atom();
        if (accept('^')) {
            skip_ws();
            std::size_t start = pos_;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
            if (start == pos_) fail("expected exponent");
            if (pos_ - start > 4) fail("exponent too large");
            base = base.pow(static_cast<unsigned>(std::stoul(std::string(text_.substr(start, pos_ - start)))));
        }
        return base;
    }

    P parse_atom() {
        skip_ws();
        if (pos_ >= text_.size()) fail("unexpected end of expression");
        char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            P inner = parse_sum();
            if (!accept(')')) fail("expected ')'");
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
            Rational q(Integer(std::string(text_.substr(start, pos_ - start))));
            return P::constant(ring_, ring_->field().from_rational(q));
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            while (pos_ < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
                ++pos_;
            std::string name(text_.substr(start, pos_ - start));
            if (auto i = ring_->index_of(name)) return P::variable(ring_, *i);
            if (hook_)
                if (auto e = hook_(name)) return P::constant(ring_, *e);
            pos_ = start;
            fail("unknown variable '" + name + "'");
        }
        fail("unexpected character '" + std::string(1, c) + "'");
    }

    RingPtr<F> ring_;
    std::string_view text_;
    ParamHook<F> hook_;
    std::size_t pos_ = 0;
};

}  // namespace detail

template <class F>
Polynomial<F> parse_polynomial(const RingPtr<F>& ring, std::string_view text, ParamHook<F> hook = {}) {
    return detail::ExprParser<F>(ring, text, std::move(hook)).parse();
}

}  // namespace lpde
