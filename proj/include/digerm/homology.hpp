#pragma once

#include "digerm/branching.hpp"
#include "digerm/snf.hpp"

#include <map>
#include <string>
#include <vector>

namespace digerm {

/// Finitely generated abelian group in invariant-factor form: free rank plus
/// torsion coefficients t_1 | t_2 | ... (each >= 2).
struct HomologyGroup {
    long long free_rank = 0;
    std::vector<Int> torsion;

    bool trivial() const { return free_rank == 0 && torsion.empty(); }
    bool operator==(const HomologyGroup&) const = default;

    std::string str() const
    {
        if (trivial())
            return "0";
        std::string out;
        if (free_rank == 1)
            out = "Z";
        else if (free_rank > 1)
            out = "Z^" + std::to_string(free_rank);
        for (const Int& t : torsion) {
            if (!out.empty())
                out += " + ";
            out += "Z/" + t.str();
        }
        return out;
    }
};

/// Direct sum, renormalized so that the torsion list is again a divisibility
/// chain (the factors of the two summands need not interleave).
inline HomologyGroup direct_sum(const HomologyGroup& a, const HomologyGroup& b)
{
    HomologyGroup out;
    out.free_rank = a.free_rank + b.free_rank;
    if (a.torsion.empty()) {
        out.torsion = b.torsion;
        return out;
    }
    if (b.torsion.empty()) {
        out.torsion = a.torsion;
        return out;
    }
    std::vector<Int> all = a.torsion;
    all.insert(all.end(), b.torsion.begin(), b.torsion.end());
    Mat diag(all.size(), all.size());
    for (std::size_t i = 0; i < all.size(); ++i)
        diag(i, i) = all[i];
    for (const Int& d : snf(diag).diagonal())
        if (d >= 2)
            out.torsion.push_back(d);
    return out;
}

/// Graded integer chain complex; boundary[k] : degree k -> degree k-1 with
/// rows indexed by (k-1)-cells and columns by k-cells.
struct ChainComplex {
    std::vector<long long> ranks;
    std::vector<Mat> boundary; // boundary[0] is a 0 x ranks[0] placeholder

    bool operator==(const ChainComplex&) const = default;

    int top_degree() const { return static_cast<int>(ranks.size()) - 1; }
};

inline ChainComplex chain_complex(const CWComplexData& cw)
{
    ChainComplex c;
    for (const auto& level : cw.cells)
        c.ranks.push_back(static_cast<long long>(level.size()));
    c.boundary = cw.boundary;
    return c;
}

inline void require_chain_complex(const ChainComplex& c)
{
    for (std::size_t k = 0; k < c.boundary.size(); ++k) {
        const std::size_t rows = k == 0 ? 0 : static_cast<std::size_t>(c.ranks[k - 1]);
        if (c.boundary[k].rows() != rows ||
            c.boundary[k].cols() != static_cast<std::size_t>(c.ranks[k]))
            throw InputError("chain complex: boundary " + std::to_string(k) +
                             " has the wrong shape");
    }
    for (std::size_t k = 2; k < c.boundary.size(); ++k)
        if (!mul(c.boundary[k - 1], c.boundary[k]).is_zero())
            throw InputError("chain complex: boundary composite nonzero in degree " +
                             std::to_string(k));
}

/// Exact integer homology H_k = ker d_k / im d_(k+1) via Smith normal form.
inline std::map<int, HomologyGroup> homology(const ChainComplex& c)
{
    require_chain_complex(c);
    std::map<int, HomologyGroup> out;
    const int top = c.top_degree();
    std::vector<std::size_t> ranks_of_d(static_cast<std::size_t>(top) + 2, 0);
    std::vector<std::vector<Int>> diag_of_d(static_cast<std::size_t>(top) + 2);
    for (int k = 1; k <= top; ++k) {
        SNFResult r = snf(c.boundary[static_cast<std::size_t>(k)]);
        ranks_of_d[static_cast<std::size_t>(k)] = r.rank();
        diag_of_d[static_cast<std::size_t>(k)] = r.diagonal();
    }
    for (int k = 0; k <= top; ++k) {
        HomologyGroup h;
        h.free_rank = c.ranks[static_cast<std::size_t>(k)] -
                      static_cast<long long>(ranks_of_d[static_cast<std::size_t>(k)]) -
                      static_cast<long long>(ranks_of_d[static_cast<std::size_t>(k) + 1]);
        for (const Int& d : diag_of_d[static_cast<std::size_t>(k) + 1])
            if (d >= 2)
                h.torsion.push_back(d);
        out.emplace(k, std::move(h));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Branching homology of a globular complex:
//   degree 0:      free on the states with empty branching space,
//   degree 1:      free of rank sum_alpha max(0, components(alpha) - 1),
//   degree n >= 2: direct sum over states of H_(n-1) of the branching spaces.
// Merging homology is the branching homology of the time-reversed complex.
// ---------------------------------------------------------------------------

/// Branching homology together with the per-state component counts; the
/// latter are the coarsest per-state invariant the subdivision theorems
/// preserve, and both come out of the same pass over the branching spaces.
struct BranchingProfile {
    std::map<int, HomologyGroup> homology;
    std::vector<std::pair<std::string, int>> components; // state -> pi0 count
};

inline BranchingProfile branching_profile(const GlobularComplex& x)
{
    {
        ValidationReport rep = validate_complex(x);
        if (!rep.ok())
            throw InputError("branching_homology: invalid complex:\n" + rep.str());
    }
    const int maxdim = x.max_dim();
    BranchingProfile out;
    for (int n = 0; n <= std::max(maxdim, 0); ++n)
        out.homology.emplace(n, HomologyGroup{});

    long long final_states = 0;
    long long excess_components = 0;
    for (const auto& [alpha, cw] : branching_spaces(x)) {
        if (cw.empty()) {
            ++final_states;
            out.components.emplace_back(alpha, 0);
            continue;
        }
        ComponentMap cm = pi0(cw);
        out.components.emplace_back(alpha, cm.count);
        excess_components += std::max(0, cm.count - 1);
        std::map<int, HomologyGroup> h = homology(chain_complex(cw));
        for (const auto& [deg, grp] : h) {
            if (deg < 1 || grp.trivial())
                continue;
            out.homology[deg + 1] = direct_sum(out.homology[deg + 1], grp);
        }
    }
    out.homology[0].free_rank = final_states;
    if (maxdim >= 1)
        out.homology[1].free_rank = excess_components;
    return out;
}

inline std::map<int, HomologyGroup> branching_homology(const GlobularComplex& x)
{
    return branching_profile(x).homology;
}

inline std::map<int, HomologyGroup> merging_homology(const GlobularComplex& x)
{
    return branching_homology(op(x));
}

inline json homology_to_json(const std::map<int, HomologyGroup>& h)
{
    json out = json::object();
    for (const auto& [deg, grp] : h) {
        json t = json::array();
        for (const Int& x : grp.torsion)
            t.push_back(to_int64(x));
        out[std::to_string(deg)] = {{"rank", grp.free_rank}, {"torsion", t}};
    }
    return out;
}

inline bool homology_equal(const std::map<int, HomologyGroup>& a,
                           const std::map<int, HomologyGroup>& b)
{
    auto group_at = [](const std::map<int, HomologyGroup>& h, int n) {
        auto it = h.find(n);
        return it == h.end() ? HomologyGroup{} : it->second;
    };
    int top = -1;
    if (!a.empty())
        top = std::max(top, a.rbegin()->first);
    if (!b.empty())
        top = std::max(top, b.rbegin()->first);
    for (int n = 0; n <= top; ++n)
        if (!(group_at(a, n) == group_at(b, n)))
            return false;
    return true;
}

} // namespace digerm
