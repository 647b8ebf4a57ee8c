#pragma once

#include "digerm/formal_sum.hpp"
#include "digerm/precubical.hpp"
#include "digerm/validation.hpp"

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace digerm {

/// One globular cell.  `dim` >= 1; a cell of dimension n is attached between
/// its source and target states along a sphere of cells one dimension lower.
/// `branch`/`merge` hold the signed incidence onto cells sharing the source
/// (resp. target) state; `flow` optionally records the attaching map as a
/// signed sum of composable cell chains running from src to tgt.
struct GlobularCell {
    std::string id;
    int dim = 1;
    std::string src;
    std::string tgt;
    FormalSum branch;
    FormalSum merge;
    std::optional<ChainSum> flow;

    bool operator==(const GlobularCell&) const = default;
};

/// A finite cellular multipointed complex: states plus cells listed in a
/// valid attachment order (boundaries only reference earlier cells).
/// Immutable by convention after validation; operators return fresh copies.
struct GlobularComplex {
    std::vector<std::string> states;
    std::vector<GlobularCell> cells;

    bool operator==(const GlobularComplex&) const = default;

    int max_dim() const
    {
        int d = 0;
        for (const auto& c : cells)
            d = std::max(d, c.dim);
        return d;
    }

    std::vector<std::size_t> cell_census() const
    {
        std::vector<std::size_t> out(static_cast<std::size_t>(max_dim()) + 1, 0);
        out[0] = states.size();
        for (const auto& c : cells)
            ++out[static_cast<std::size_t>(c.dim)];
        return out;
    }

    const GlobularCell* find(const std::string& id) const
    {
        for (const auto& c : cells)
            if (c.id == id)
                return &c;
        return nullptr;
    }

    std::map<std::string, const GlobularCell*> cell_index() const
    {
        std::map<std::string, const GlobularCell*> idx;
        for (const auto& c : cells)
            idx.emplace(c.id, &c);
        return idx;
    }

    bool has_state(const std::string& s) const
    {
        for (const auto& st : states)
            if (st == s)
                return true;
        return false;
    }
};

// ---------------------------------------------------------------------------
// realize: precubical set -> globular complex.
//
// States are the 0-cubes.  An n-cube c becomes a cell of dimension n running
// from its iterated front-face vertex to its iterated back-face vertex, with
//   branch(c) = sum_i (-1)^(i-1) d0_i c,   merge(c) = sum_i (-1)^(i-1) d1_i c.
// For n >= 2 the attaching chains walk the cube shell: the front face d0_i
// followed by the remaining back edge along axis i, and (for n >= 3) the
// front edge along axis i followed by the back face d1_i.  For n = 2 the two
// families coincide, so only the front family is emitted.
// ---------------------------------------------------------------------------

namespace detail {

// Iterated face walk: apply d^alpha along every axis except `skip`
// (1-indexed, 0 = none), top axis first so lower indices stay stable.
inline std::string iterated_face(const PrecubicalSet& k, const std::string& id, int n,
                                 int alpha, int skip)
{
    std::string cur = id;
    for (int j = n; j >= 1; --j) {
        if (j == skip)
            continue;
        cur = k.face(cur, alpha, j);
    }
    return cur;
}

} // namespace detail

inline GlobularComplex realize(const PrecubicalSet& k)
{
    {
        ValidationReport rep = validate(k);
        if (!rep.ok())
            throw InputError("realize: invalid precubical set:\n" + rep.str());
    }
    GlobularComplex x;
    if (!k.cubes.empty())
        x.states = k.cubes[0];
    for (std::size_t n = 1; n < k.cubes.size(); ++n) {
        const int dim = static_cast<int>(n);
        for (const auto& id : k.cubes[n]) {
            GlobularCell cell;
            cell.id = id;
            cell.dim = dim;
            cell.src = detail::iterated_face(k, id, dim, 0, 0);
            cell.tgt = detail::iterated_face(k, id, dim, 1, 0);
            if (dim >= 2)
                for (int i = 1; i <= dim; ++i) {
                    const long long sign = (i % 2 == 1) ? 1 : -1;
                    cell.branch.add(k.face(id, 0, i), sign);
                    cell.merge.add(k.face(id, 1, i), sign);
                }
            if (dim >= 2) {
                ChainSum flow;
                for (int i = 1; i <= dim; ++i) {
                    const long long sign = (i % 2 == 1) ? 1 : -1;
                    // front face, then the back edge along axis i
                    flow.add(sign, {k.face(id, 0, i),
                                    detail::iterated_face(k, id, dim, 1, i)});
                    if (dim >= 3)
                        // front edge along axis i, then the back face
                        flow.add(sign, {detail::iterated_face(k, id, dim, 0, i),
                                        k.face(id, 1, i)});
                }
                flow.normalize();
                cell.flow = std::move(flow);
            }
            x.cells.push_back(std::move(cell));
        }
    }
    return x;
}

// ---------------------------------------------------------------------------
// globe(n): two states 0 and 1; for n >= 1 two cells per dimension 1..n plus
// one top cell of dimension n+1.  Boundaries carry the standard
// two-hemispheres sphere structure (the signs are pinned by dd = 0):
//   d e^k+ = e^(k-1)+ + (-1)^(k-1) e^(k-1)-,
//   d e^k- = (-1)^(k-1) e^(k-1)+ + e^(k-1)-,
//   d top  = e^n+ + (-1)^n e^n-.
// Branch and merge coincide, and the attaching chains are the single cells
// e^(k-1)+/- with the same coefficients.
// ---------------------------------------------------------------------------

inline GlobularComplex globe(int n)
{
    if (n < 0)
        throw InputError("globe: n must be nonnegative");
    GlobularComplex x;
    x.states = {"0", "1"};
    auto name = [](int k, char sgn) { return "e" + std::to_string(k) + sgn; };
    if (n == 0) {
        GlobularCell c;
        c.id = "i";
        c.dim = 1;
        c.src = "0";
        c.tgt = "1";
        x.cells.push_back(std::move(c));
        return x;
    }
    for (int kk = 1; kk <= n; ++kk) {
        for (char sgn : {'+', '-'}) {
            GlobularCell c;
            c.id = name(kk, sgn);
            c.dim = kk;
            c.src = "0";
            c.tgt = "1";
            if (kk >= 2) {
                const long long alt = (kk % 2 == 0) ? -1 : 1; // (-1)^(k-1)
                ChainSum flow;
                if (sgn == '+') {
                    c.branch.add(name(kk - 1, '+'), 1);
                    c.branch.add(name(kk - 1, '-'), alt);
                    flow.add(1, {name(kk - 1, '+')});
                    flow.add(alt, {name(kk - 1, '-')});
                } else {
                    c.branch.add(name(kk - 1, '+'), alt);
                    c.branch.add(name(kk - 1, '-'), 1);
                    flow.add(alt, {name(kk - 1, '+')});
                    flow.add(1, {name(kk - 1, '-')});
                }
                c.merge = c.branch;
                flow.normalize();
                c.flow = std::move(flow);
            }
            x.cells.push_back(std::move(c));
        }
    }
    GlobularCell top;
    top.id = "top";
    top.dim = n + 1;
    top.src = "0";
    top.tgt = "1";
    const long long alt = (n % 2 == 0) ? 1 : -1; // (-1)^n
    top.branch.add(name(n, '+'), 1);
    top.branch.add(name(n, '-'), alt);
    top.merge = top.branch;
    ChainSum flow;
    flow.add(1, {name(n, '+')});
    flow.add(alt, {name(n, '-')});
    flow.normalize();
    top.flow = std::move(flow);
    x.cells.push_back(std::move(top));
    return x;
}

/// Time reversal: swap src/tgt and branch/merge, reverse every attaching
/// chain.  An involution on the nose.
inline GlobularComplex op(const GlobularComplex& x)
{
    GlobularComplex y;
    y.states = x.states;
    y.cells.reserve(x.cells.size());
    for (const auto& c : x.cells) {
        GlobularCell d;
        d.id = c.id;
        d.dim = c.dim;
        d.src = c.tgt;
        d.tgt = c.src;
        d.branch = c.merge;
        d.merge = c.branch;
        if (c.flow)
            d.flow = c.flow->reversed();
        y.cells.push_back(std::move(d));
    }
    return y;
}

// ---------------------------------------------------------------------------
// validate_complex
// ---------------------------------------------------------------------------

/// Full validation includes the chain-projection consistency checks; the
/// structural level (check_flow_projection = false) is what the flow oracle
/// builds on, since its purpose is exactly to catch incidence/chain
/// disagreements itself.
inline ValidationReport validate_complex(const GlobularComplex& x,
                                         bool check_flow_projection = true)
{
    ValidationReport rep;
    std::set<std::string> state_set(x.states.begin(), x.states.end());
    if (state_set.size() != x.states.size())
        rep.add("duplicate-state", "", "state list contains duplicates");

    std::map<std::string, const GlobularCell*> seen; // cells placed so far
    for (const auto& c : x.cells) {
        if (seen.count(c.id)) {
            rep.add("duplicate-id", c.id, "cell identifier used more than once");
            continue;
        }
        if (c.dim < 1)
            rep.add("bad-dim", c.id, "cell dimension must be >= 1");
        if (!state_set.count(c.src))
            rep.add("unknown-state", c.id, "src '" + c.src + "' is not a state");
        if (!state_set.count(c.tgt))
            rep.add("unknown-state", c.id, "tgt '" + c.tgt + "' is not a state");

        auto boundary_check = [&](const FormalSum& sum, bool is_branch) {
            const char* side = is_branch ? "branch" : "merge";
            for (const auto& [id, coef] : sum.terms) {
                (void)coef;
                auto it = seen.find(id);
                if (it == seen.end()) {
                    rep.add("attachment-order", c.id,
                            std::string(side) + " references '" + id +
                                "' which does not precede it");
                    continue;
                }
                const GlobularCell* b = it->second;
                if (b->dim != c.dim - 1)
                    rep.add("bad-grading", c.id,
                            std::string(side) + " summand '" + id + "' has dimension " +
                                std::to_string(b->dim) + ", expected " +
                                std::to_string(c.dim - 1));
                if (is_branch && b->src != c.src)
                    rep.add("src-mismatch", c.id,
                            "branch summand '" + id + "' starts at '" + b->src +
                                "', cell starts at '" + c.src + "'");
                if (!is_branch && b->tgt != c.tgt)
                    rep.add("tgt-mismatch", c.id,
                            "merge summand '" + id + "' ends at '" + b->tgt +
                                "', cell ends at '" + c.tgt + "'");
            }
        };

        if (c.dim == 1) {
            if (!c.branch.empty() || !c.merge.empty())
                rep.add("edge-boundary", c.id,
                        "cells of dimension 1 must have empty boundaries");
            if (c.flow)
                rep.add("edge-flow", c.id,
                        "cells of dimension 1 carry no attaching chains");
        } else {
            boundary_check(c.branch, true);
            boundary_check(c.merge, false);
        }

        if (c.flow && c.dim >= 2) {
            FormalSum first_proj, last_proj;
            for (const auto& [coef, chain] : c.flow->terms) {
                if (chain.empty()) {
                    rep.add("empty-chain", c.id, "attaching chain is empty");
                    continue;
                }
                bool broken = false;
                for (std::size_t t = 0; t < chain.size() && !broken; ++t) {
                    auto it = seen.find(chain[t]);
                    if (it == seen.end()) {
                        rep.add("attachment-order", c.id,
                                "chain factor '" + chain[t] + "' does not precede the cell");
                        broken = true;
                        break;
                    }
                    if (t > 0) {
                        const GlobularCell* prev = seen.at(chain[t - 1]);
                        if (prev->tgt != it->second->src) {
                            rep.add("chain-composition", c.id,
                                    "factors '" + chain[t - 1] + "' and '" + chain[t] +
                                        "' do not compose");
                            broken = true;
                        }
                    }
                }
                if (broken)
                    continue;
                const GlobularCell* head = seen.at(chain.front());
                const GlobularCell* tail = seen.at(chain.back());
                if (head->src != c.src)
                    rep.add("chain-endpoint", c.id,
                            "chain starts at '" + head->src + "', cell starts at '" +
                                c.src + "'");
                if (tail->tgt != c.tgt)
                    rep.add("chain-endpoint", c.id,
                            "chain ends at '" + tail->tgt + "', cell ends at '" + c.tgt +
                                "'");
                // Only factors in the top incidence degree contribute; chains
                // whose end factor sits deeper project into a lower skeleton.
                if (head->dim == c.dim - 1)
                    first_proj.add(chain.front(), coef);
                if (tail->dim == c.dim - 1)
                    last_proj.add(chain.back(), coef);
            }
            // The stored incidence must agree with the chain projection up to
            // one global sign per cell; the orientation of the attaching
            // sphere is not tracked by the combinatorial model.
            if (check_flow_projection) {
                if (first_proj != c.branch && first_proj != c.branch.negated())
                    rep.add("flow-branch-mismatch", c.id,
                            "first-factor projection " + first_proj.str() +
                                " does not reproduce branch boundary " + c.branch.str());
                if (last_proj != c.merge && last_proj != c.merge.negated())
                    rep.add("flow-merge-mismatch", c.id,
                            "last-factor projection " + last_proj.str() +
                                " does not reproduce merge boundary " + c.merge.str());
            }
        }
        seen.emplace(c.id, &c);
    }

    // flow data must be all-or-nothing per dimension
    std::map<int, std::pair<bool, bool>> flow_presence; // dim -> (some with, some without)
    for (const auto& c : x.cells) {
        if (c.dim < 2)
            continue;
        auto& p = flow_presence[c.dim];
        (c.flow ? p.first : p.second) = true;
    }
    for (const auto& [dim, p] : flow_presence)
        if (p.first && p.second)
            rep.add("flow-partial", std::to_string(dim),
                    "attaching chains present for some but not all cells of dimension " +
                        std::to_string(dim));

    // dd = 0 on both sides, degreewise at every state
    if (rep.ok()) {
        auto idx = x.cell_index();
        for (const auto& c : x.cells) {
            if (c.dim < 3)
                continue;
            FormalSum bb, mm;
            for (const auto& [id, coef] : c.branch.terms) {
                for (const auto& [id2, coef2] : idx.at(id)->branch.terms)
                    bb.add(id2, coef * coef2);
            }
            for (const auto& [id, coef] : c.merge.terms) {
                for (const auto& [id2, coef2] : idx.at(id)->merge.terms)
                    mm.add(id2, coef * coef2);
            }
            if (!bb.empty())
                rep.add("ddzero-branch", c.id, "branch boundary squared = " + bb.str());
            if (!mm.empty())
                rep.add("ddzero-merge", c.id, "merge boundary squared = " + mm.str());
        }
    }
    return rep;
}

// ---------------------------------------------------------------------------
// JSON wire format:
//   {"format": "globular", "states": [...],
//    "cells": [{"id", "dim", "src", "tgt",
//               "branch": [[coef, "cell"], ...], "merge": [...],
//               "flow": [[coef, ["c1", "c2"]], ...]?}, ...]}
// ---------------------------------------------------------------------------

inline json emit_json(const GlobularComplex& x)
{
    json out;
    out["format"] = "globular";
    out["states"] = x.states;
    json cells = json::array();
    for (const auto& c : x.cells) {
        json jc;
        jc["id"] = c.id;
        jc["dim"] = c.dim;
        jc["src"] = c.src;
        jc["tgt"] = c.tgt;
        json branch = json::array();
        for (const auto& [id, coef] : c.branch.terms)
            branch.push_back(json::array({coef, id}));
        jc["branch"] = branch;
        json merge = json::array();
        for (const auto& [id, coef] : c.merge.terms)
            merge.push_back(json::array({coef, id}));
        jc["merge"] = merge;
        if (c.flow) {
            json flow = json::array();
            for (const auto& [coef, chain] : c.flow->terms)
                flow.push_back(json::array({coef, chain}));
            jc["flow"] = flow;
        }
        cells.push_back(std::move(jc));
    }
    out["cells"] = std::move(cells);
    return out;
}

inline GlobularComplex parse_globular(const json& j)
{
    if (!j.is_object())
        throw InputError("globular JSON must be an object");
    for (const auto& [key, value] : j.items()) {
        (void)value;
        if (key != "format" && key != "states" && key != "cells")
            throw InputError("unknown key '" + key + "' in globular JSON");
    }
    if (j.contains("format") && j.at("format") != "globular")
        throw InputError("format key must be 'globular'");
    if (!j.contains("states") || !j.at("states").is_array())
        throw InputError("globular JSON needs a 'states' array");
    GlobularComplex x;
    for (const auto& s : j.at("states")) {
        if (!s.is_string())
            throw InputError("states must be strings");
        x.states.push_back(s.get<std::string>());
    }
    if (!j.contains("cells") || !j.at("cells").is_array())
        throw InputError("globular JSON needs a 'cells' array");
    for (const auto& jc : j.at("cells")) {
        if (!jc.is_object())
            throw InputError("cell entries must be objects");
        for (const auto& [key, value] : jc.items()) {
            (void)value;
            if (key != "id" && key != "dim" && key != "src" && key != "tgt" &&
                key != "branch" && key != "merge" && key != "flow")
                throw InputError("unknown key '" + key + "' in cell entry");
        }
        GlobularCell c;
        if (!jc.contains("id") || !jc.at("id").is_string())
            throw InputError("cell entry needs a string 'id'");
        c.id = jc.at("id").get<std::string>();
        if (!jc.contains("dim") || !jc.at("dim").is_number_integer())
            throw InputError("cell '" + c.id + "' needs an integer 'dim'");
        c.dim = jc.at("dim").get<int>();
        if (!jc.contains("src") || !jc.at("src").is_string() || !jc.contains("tgt") ||
            !jc.at("tgt").is_string())
            throw InputError("cell '" + c.id + "' needs string 'src' and 'tgt'");
        c.src = jc.at("src").get<std::string>();
        c.tgt = jc.at("tgt").get<std::string>();
        auto parse_sum = [&](const char* key) {
            FormalSum sum;
            if (!jc.contains(key))
                return sum;
            if (!jc.at(key).is_array())
                throw InputError("cell '" + c.id + "': '" + key + "' must be an array");
            for (const auto& term : jc.at(key)) {
                if (!term.is_array() || term.size() != 2 || !term[0].is_number_integer() ||
                    !term[1].is_string())
                    throw InputError("cell '" + c.id + "': '" + key +
                                     "' terms must be [coef, \"cell\"]");
                sum.add(term[1].get<std::string>(), term[0].get<long long>());
            }
            return sum;
        };
        c.branch = parse_sum("branch");
        c.merge = parse_sum("merge");
        if (jc.contains("flow")) {
            if (!jc.at("flow").is_array())
                throw InputError("cell '" + c.id + "': 'flow' must be an array");
            ChainSum flow;
            for (const auto& term : jc.at("flow")) {
                if (!term.is_array() || term.size() != 2 || !term[0].is_number_integer() ||
                    !term[1].is_array())
                    throw InputError("cell '" + c.id +
                                     "': flow terms must be [coef, [\"c1\", ...]]");
                CellChain chain;
                for (const auto& f : term[1]) {
                    if (!f.is_string())
                        throw InputError("chain factors must be strings");
                    chain.push_back(f.get<std::string>());
                }
                flow.add(term[0].get<long long>(), std::move(chain));
            }
            flow.normalize();
            c.flow = std::move(flow);
        }
        x.cells.push_back(std::move(c));
    }
    return x;
}

} // namespace digerm
