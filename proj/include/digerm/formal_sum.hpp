#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace digerm {

/// Signed formal sum of identifiers with integer coefficients.  Zero
/// coefficients are dropped eagerly, so two sums are equal iff their term
/// maps are equal.
struct FormalSum {
    std::map<std::string, long long> terms;

    void add(const std::string& id, long long c)
    {
        if (c == 0)
            return;
        auto it = terms.find(id);
        if (it == terms.end()) {
            terms.emplace(id, c);
            return;
        }
        it->second += c;
        if (it->second == 0)
            terms.erase(it);
    }

    long long coef(const std::string& id) const
    {
        auto it = terms.find(id);
        return it == terms.end() ? 0 : it->second;
    }

    bool empty() const { return terms.empty(); }
    bool operator==(const FormalSum&) const = default;

    FormalSum negated() const
    {
        FormalSum out;
        for (const auto& [id, c] : terms)
            out.terms.emplace(id, -c);
        return out;
    }

    std::string str() const
    {
        if (terms.empty())
            return "0";
        std::string out;
        bool first = true;
        for (const auto& [id, c] : terms) {
            if (!first)
                out += c >= 0 ? " + " : " - ";
            else if (c < 0)
                out += "-";
            long long a = c >= 0 ? c : -c;
            if (a != 1)
                out += std::to_string(a) + "*";
            out += id;
            first = false;
        }
        return out;
    }
};

/// One composable sequence of cell identifiers (a path at the cell level).
using CellChain = std::vector<std::string>;

/// Signed formal sum of cell chains.  Kept in a sorted normal form so that
/// structural equality is meaningful and serialization is deterministic.
struct ChainSum {
    std::vector<std::pair<long long, CellChain>> terms;

    void add(long long c, CellChain chain)
    {
        if (c == 0 || chain.empty())
            return;
        for (auto& [coef, existing] : terms) {
            if (existing == chain) {
                coef += c;
                return;
            }
        }
        terms.emplace_back(c, std::move(chain));
    }

    void normalize()
    {
        std::erase_if(terms, [](const auto& t) { return t.first == 0; });
        std::sort(terms.begin(), terms.end(),
                  [](const auto& a, const auto& b) { return a.second < b.second; });
    }

    bool empty() const { return terms.empty(); }
    bool operator==(const ChainSum&) const = default;

    ChainSum reversed() const
    {
        ChainSum out;
        for (const auto& [c, chain] : terms) {
            CellChain rev(chain.rbegin(), chain.rend());
            out.add(c, std::move(rev));
        }
        out.normalize();
        return out;
    }
};

} // namespace digerm
