// Shared test utilities: terse system literals and seeded random system
// generators used by the property tests and the acceptance corpus.

#ifndef RULETREE_TESTS_HELPERS_HPP
#define RULETREE_TESTS_HELPERS_HPP

#include <algorithm>
#include <random>
#include <string>
#include <vector>

#include "ruletree/core.hpp"
#include "ruletree/textio.hpp"

namespace rt = ruletree;

inline rt::RuleSystem sys(const std::string& text) { return rt::parse_system(text); }

inline rt::Value v(std::uint64_t n) { return rt::Value(n); }
inline rt::Value star() { return rt::Value::star(); }

inline rt::ValueTuple tuple_of(const rt::RuleSystem& s, std::vector<rt::Value> values) {
    return rt::ValueTuple::over(s, std::move(values));
}

struct RandomSystemParams {
    std::size_t max_attributes = 5;   // attribute indices drawn from 1..max
    std::size_t max_values = 2;       // values drawn from 0..max-1
    std::size_t max_rules = 5;
    std::size_t max_length = 3;
    std::size_t max_decision = 3;
    bool allow_empty_lhs = true;
};

// A random nonempty system without duplicate rules; deterministic for a
// given engine state.
inline rt::RuleSystem random_system(std::mt19937& rng, const RandomSystemParams& p = {}) {
    auto pick = [&](std::size_t lo, std::size_t hi) {
        return lo + rng() % (hi - lo + 1);
    };
    while (true) {
        std::size_t count = pick(1, p.max_rules);
        std::vector<rt::Rule> rules;
        for (std::size_t i = 0; i < count; ++i) {
            std::size_t length = pick(p.allow_empty_lhs ? 0 : 1,
                                      std::min(p.max_length, p.max_attributes));
            std::vector<std::uint32_t> attrs(p.max_attributes);
            for (std::size_t j = 0; j < attrs.size(); ++j) attrs[j] = static_cast<std::uint32_t>(j + 1);
            std::shuffle(attrs.begin(), attrs.end(), rng);
            attrs.resize(length);
            std::sort(attrs.begin(), attrs.end());
            std::vector<rt::Equation> conds;
            for (auto a : attrs) {
                conds.push_back(rt::Equation{rt::attr(a), rt::Value(pick(0, p.max_values - 1))});
            }
            rt::Rule candidate(std::move(conds), pick(0, p.max_decision));
            bool duplicate = std::any_of(rules.begin(), rules.end(), [&](const rt::Rule& r) {
                return rt::rules_equal(r, candidate);
            });
            if (!duplicate) rules.push_back(std::move(candidate));
        }
        if (!rules.empty()) return rt::RuleSystem(std::move(rules));
    }
}

// A random system where every rule has the same positive length (an S+
// instance for the greedy-cover checks).
inline rt::RuleSystem random_uniform_length_system(std::mt19937& rng, std::size_t max_attributes,
                                                   std::size_t length, std::size_t max_rules) {
    auto pick = [&](std::size_t lo, std::size_t hi) { return lo + rng() % (hi - lo + 1); };
    while (true) {
        std::size_t count = pick(1, max_rules);
        std::vector<rt::Rule> rules;
        for (std::size_t i = 0; i < count; ++i) {
            std::vector<std::uint32_t> attrs(max_attributes);
            for (std::size_t j = 0; j < attrs.size(); ++j) attrs[j] = static_cast<std::uint32_t>(j + 1);
            std::shuffle(attrs.begin(), attrs.end(), rng);
            attrs.resize(length);
            std::sort(attrs.begin(), attrs.end());
            std::vector<rt::Equation> conds;
            for (auto a : attrs) {
                conds.push_back(rt::Equation{rt::attr(a), rt::Value(pick(0, 1))});
            }
            rt::Rule candidate(std::move(conds), 0);
            bool duplicate = std::any_of(rules.begin(), rules.end(), [&](const rt::Rule& r) {
                return rt::rules_equal(r, candidate);
            });
            if (!duplicate) rules.push_back(std::move(candidate));
        }
        if (!rules.empty()) return rt::RuleSystem(std::move(rules));
    }
}

#endif  // RULETREE_TESTS_HELPERS_HPP
