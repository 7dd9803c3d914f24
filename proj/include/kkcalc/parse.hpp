#pragma once

#include <cctype>
#include <cstddef>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "kkcalc/graded.hpp"

namespace kkcalc {

// Surface syntax for groups:
//   group  := term ('+' term)*
//   term   := 'Z' ('^' nat)? | 'Z/' nat | '0'
//   graded := '[' group ';' group ']'
// Whitespace-insensitive. 'Z/0' and 'Z/1' are rejected ('0' spells the
// trivial group). Factors may be given in any order; the result is always the
// invariant-factor canonical form.

namespace detail {

class GroupParser {
public:
    explicit GroupParser(std::string_view text) : text_(text) {}

    FgaGroup parse_group_to_end() {
        FgaGroup g = parse_group();
        skip_ws();
        if (pos_ != text_.size()) fail("unexpected trailing input");
        return g;
    }

    GradedGroup parse_graded_to_end() {
        skip_ws();
        expect('[');
        FgaGroup even = parse_group();
        skip_ws();
        expect(';');
        FgaGroup odd = parse_group();
        skip_ws();
        expect(']');
        skip_ws();
        if (pos_ != text_.size()) fail("unexpected trailing input");
        return {even, odd};
    }

    bool looks_graded() {
        skip_ws();
        return pos_ < text_.size() && text_[pos_] == '[';
    }

private:
    FgaGroup parse_group() {
        std::size_t free_rank = 0;
        std::vector<Int> orders;
        parse_term(free_rank, orders);
        for (;;) {
            skip_ws();
            if (pos_ < text_.size() && text_[pos_] == '+') {
                ++pos_;
                parse_term(free_rank, orders);
            } else {
                break;
            }
        }
        Canonicalization c = canonicalize_orders(orders);
        return {free_rank + c.group.free_rank, c.group.torsion};
    }

    void parse_term(std::size_t& free_rank, std::vector<Int>& orders) {
        skip_ws();
        if (pos_ >= text_.size()) fail("expected a group term");
        if (text_[pos_] == '0') {
            ++pos_;
            return;  // trivial summand
        }
        if (text_[pos_] != 'Z') fail("expected 'Z', 'Z/n', 'Z^n' or '0'");
        ++pos_;
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == '^') {
            ++pos_;
            Int n = parse_nat();
            if (n > 1000000) fail("free rank out of range");
            free_rank += static_cast<std::size_t>(n);
        } else if (pos_ < text_.size() && text_[pos_] == '/') {
            const std::size_t at = pos_;
            ++pos_;
            Int n = parse_nat();
            if (n == 0) fail_at("zero modulus: Z/0 is not a group", at);
            if (n == 1) fail_at("Z/1 is trivial; write 0 instead", at);
            orders.push_back(n);
        } else {
            free_rank += 1;
        }
    }

    Int parse_nat() {
        skip_ws();
        const std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        if (pos_ == start) fail("expected a number");
        Int n = 0;
        for (std::size_t i = start; i < pos_; ++i) n = n * 10 + (text_[i] - '0');
        return n;
    }

    void expect(char c) {
        skip_ws();
        if (pos_ >= text_.size() || text_[pos_] != c)
            fail(std::string("expected '") + c + "'");
        ++pos_;
    }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    [[noreturn]] void fail(const std::string& msg) { fail_at(msg, pos_); }
    [[noreturn]] void fail_at(const std::string& msg, std::size_t at) {
        throw ParseError(msg + " at position " + std::to_string(at), at);
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

}  // namespace detail

inline FgaGroup parse_group(std::string_view text) {
    return detail::GroupParser(text).parse_group_to_end();
}

inline GradedGroup parse_graded(std::string_view text) {
    return detail::GroupParser(text).parse_graded_to_end();
}

/// Either form; '[' decides.
inline std::variant<FgaGroup, GradedGroup> parse_any(std::string_view text) {
    detail::GroupParser p(text);
    if (p.looks_graded()) return p.parse_graded_to_end();
    return detail::GroupParser(text).parse_group_to_end();
}

/// Canonical printing: invariant-factor form, d_1 | d_2 | ... (to_string in
/// fga.hpp). The primary form below prints the prime-power decomposition
/// instead; both round-trip through parse_group to the same canonical group.
inline std::string print_group(const FgaGroup& g) { return to_string(g); }

inline std::string print_group_primary(const FgaGroup& g) {
    if (g.is_trivial()) return "0";
    std::string s;
    if (g.free_rank == 1) s = "Z";
    else if (g.free_rank > 1) s = "Z^" + std::to_string(g.free_rank);
    std::map<Int, std::vector<Int>> powers;  // prime -> p-power factors, ascending
    for (const Int& d : g.torsion)
        for (const auto& [p, e] : factorize(d)) {
            Int pk = 1;
            for (unsigned t = 0; t < e; ++t) pk *= p;
            powers[p].push_back(pk);
        }
    for (auto& [p, list] : powers) {
        std::sort(list.begin(), list.end());
        for (const Int& pk : list) {
            if (!s.empty()) s += " + ";
            s += "Z/" + pk.str();
        }
    }
    return s;
}

inline std::string print_graded(const GradedGroup& g, bool primary_form = false) {
    auto pr = [&](const FgaGroup& x) { return primary_form ? print_group_primary(x) : print_group(x); };
    return "[" + pr(g.even) + " ; " + pr(g.odd) + "]";
}

}  // namespace kkcalc
