#pragma once

#include "digerm/flow.hpp"

#include <map>
#include <set>
#include <string>
#include <variant>
#include <vector>

namespace digerm {

/// Records where the original states went.  All implemented operators keep
/// original state identifiers, so the map is the identity embedding; it is
/// part of the contract nonetheless.
struct StateInjection {
    std::map<std::string, std::string> map;

    const std::string& at(const std::string& s) const
    {
        auto it = map.find(s);
        if (it == map.end())
            throw InputError("state injection: unknown original state '" + s + "'");
        return it->second;
    }
};

namespace detail {

inline StateInjection identity_injection(const std::vector<std::string>& states)
{
    StateInjection inj;
    for (const auto& s : states)
        inj.map.emplace(s, s);
    return inj;
}

inline std::string fresh_id(const std::set<std::string>& used, std::string base)
{
    while (used.count(base))
        base += "_";
    return base;
}

inline std::set<std::string> all_ids(const GlobularComplex& x)
{
    std::set<std::string> ids(x.states.begin(), x.states.end());
    for (const auto& c : x.cells)
        ids.insert(c.id);
    return ids;
}

} // namespace detail

// ---------------------------------------------------------------------------
// Edge subdivision: replace a 1-cell e by a chain e_1 .. e_(k+1) through k
// fresh states.  Branch occurrences of e rewrite to the first piece, merge
// occurrences to the last, and chain factors to the whole subchain.
// ---------------------------------------------------------------------------

inline std::pair<GlobularComplex, StateInjection>
subdivide_edge(const GlobularComplex& x, const std::string& e, int k)
{
    if (k < 1)
        throw InputError("subdivide_edge: k must be >= 1");
    const GlobularCell* target = x.find(e);
    if (!target)
        throw InputError("subdivide_edge: no cell '" + e + "'");
    if (target->dim != 1)
        throw InputError("subdivide_edge: cell '" + e + "' has dimension " +
                         std::to_string(target->dim) + ", expected 1");

    std::set<std::string> used = detail::all_ids(x);
    std::vector<std::string> mids;
    for (int i = 1; i <= k; ++i) {
        std::string p = detail::fresh_id(used, e + ".p" + std::to_string(i));
        used.insert(p);
        mids.push_back(p);
    }
    std::vector<std::string> pieces;
    for (int i = 1; i <= k + 1; ++i) {
        std::string id = detail::fresh_id(used, e + "." + std::to_string(i));
        used.insert(id);
        pieces.push_back(id);
    }

    GlobularComplex y;
    y.states = x.states;
    y.states.insert(y.states.end(), mids.begin(), mids.end());
    for (const auto& c : x.cells) {
        if (c.id == e) {
            for (int i = 0; i <= k; ++i) {
                GlobularCell piece;
                piece.id = pieces[static_cast<std::size_t>(i)];
                piece.dim = 1;
                piece.src = i == 0 ? target->src : mids[static_cast<std::size_t>(i - 1)];
                piece.tgt = i == k ? target->tgt : mids[static_cast<std::size_t>(i)];
                y.cells.push_back(std::move(piece));
            }
            continue;
        }
        GlobularCell d = c;
        if (long long coef = d.branch.coef(e); coef != 0) {
            d.branch.add(e, -coef);
            d.branch.add(pieces.front(), coef);
        }
        if (long long coef = d.merge.coef(e); coef != 0) {
            d.merge.add(e, -coef);
            d.merge.add(pieces.back(), coef);
        }
        if (d.flow) {
            ChainSum rewritten;
            for (const auto& [coef, chain] : d.flow->terms) {
                CellChain nc;
                for (const auto& f : chain) {
                    if (f == e)
                        nc.insert(nc.end(), pieces.begin(), pieces.end());
                    else
                        nc.push_back(f);
                }
                rewritten.add(coef, std::move(nc));
            }
            rewritten.normalize();
            d.flow = std::move(rewritten);
        }
        y.cells.push_back(std::move(d));
    }
    return {std::move(y), detail::identity_injection(x.states)};
}

// ---------------------------------------------------------------------------
// Lens subdivision: split a 2-cell c whose attaching data is a pair of
// chains +k1, -k2 by inserting a fresh interior state p on a new spine
// a:src->p, b:p->tgt.  The halves are
//   c- with chains {+k1, -(a,b)},   c+ with chains {+(a,b), -k2},
// and regenerated incidence
//   branch: c- = first(k1) - a,   c+ = a - first(k2),
//   merge:  c- = b - last(k1),    c+ = last(k2) - b.
// With these orientations c |-> c- + c+ is a chain map on both sides, so
// occurrences of c in higher cells rewrite to the sum (and chain factors to
// one chain through each half).
// ---------------------------------------------------------------------------

inline std::pair<GlobularComplex, StateInjection>
subdivide_lens(const GlobularComplex& x, const std::string& cid)
{
    const GlobularCell* target = x.find(cid);
    if (!target)
        throw InputError("subdivide_lens: no cell '" + cid + "'");
    if (target->dim != 2)
        throw InputError("subdivide_lens: cell '" + cid + "' has dimension " +
                         std::to_string(target->dim) + ", expected 2");
    if (!target->flow)
        throw InputError("subdivide_lens: cell '" + cid + "' carries no attaching chains");
    const CellChain* k1 = nullptr;
    const CellChain* k2 = nullptr;
    for (const auto& [coef, chain] : target->flow->terms) {
        if (coef == 1 && !k1)
            k1 = &chain;
        else if (coef == -1 && !k2)
            k2 = &chain;
        else
            throw InputError("subdivide_lens: cell '" + cid +
                             "' boundary is not of two-chain shape");
    }
    if (!k1 || !k2)
        throw InputError("subdivide_lens: cell '" + cid +
                         "' boundary is not of two-chain shape");
    auto idx = x.cell_index();
    auto dim_of = [&](const std::string& id) { return idx.at(id)->dim; };
    if (dim_of(k1->front()) != 1 || dim_of(k1->back()) != 1 || dim_of(k2->front()) != 1 ||
        dim_of(k2->back()) != 1)
        throw InputError("subdivide_lens: cell '" + cid +
                         "' boundary is not of two-chain shape (chain ends must be edges)");

    std::set<std::string> used = detail::all_ids(x);
    const std::string p = detail::fresh_id(used, cid + ".p");
    used.insert(p);
    const std::string a = detail::fresh_id(used, cid + ".a");
    used.insert(a);
    const std::string b = detail::fresh_id(used, cid + ".b");
    used.insert(b);
    const std::string cminus = detail::fresh_id(used, cid + ".-");
    used.insert(cminus);
    const std::string cplus = detail::fresh_id(used, cid + ".+");
    used.insert(cplus);

    GlobularComplex y;
    y.states = x.states;
    y.states.push_back(p);
    for (const auto& c : x.cells) {
        if (c.id == cid) {
            GlobularCell ea;
            ea.id = a;
            ea.dim = 1;
            ea.src = target->src;
            ea.tgt = p;
            y.cells.push_back(std::move(ea));
            GlobularCell eb;
            eb.id = b;
            eb.dim = 1;
            eb.src = p;
            eb.tgt = target->tgt;
            y.cells.push_back(std::move(eb));

            GlobularCell cm;
            cm.id = cminus;
            cm.dim = 2;
            cm.src = target->src;
            cm.tgt = target->tgt;
            cm.branch.add(k1->front(), 1);
            cm.branch.add(a, -1);
            cm.merge.add(b, 1);
            cm.merge.add(k1->back(), -1);
            ChainSum fm;
            fm.add(1, *k1);
            fm.add(-1, {a, b});
            fm.normalize();
            cm.flow = std::move(fm);
            y.cells.push_back(std::move(cm));

            GlobularCell cp;
            cp.id = cplus;
            cp.dim = 2;
            cp.src = target->src;
            cp.tgt = target->tgt;
            cp.branch.add(a, 1);
            cp.branch.add(k2->front(), -1);
            cp.merge.add(k2->back(), 1);
            cp.merge.add(b, -1);
            ChainSum fp;
            fp.add(1, {a, b});
            fp.add(-1, *k2);
            fp.normalize();
            cp.flow = std::move(fp);
            y.cells.push_back(std::move(cp));
            continue;
        }
        GlobularCell d = c;
        if (long long coef = d.branch.coef(cid); coef != 0) {
            d.branch.add(cid, -coef);
            d.branch.add(cminus, coef);
            d.branch.add(cplus, coef);
        }
        if (long long coef = d.merge.coef(cid); coef != 0) {
            d.merge.add(cid, -coef);
            d.merge.add(cminus, coef);
            d.merge.add(cplus, coef);
        }
        if (d.flow) {
            ChainSum rewritten;
            for (const auto& [coef, chain] : d.flow->terms) {
                // each occurrence of the split cell doubles the chain, one
                // copy through each half
                std::vector<CellChain> variants{{}};
                for (const auto& f : chain) {
                    if (f == cid) {
                        std::vector<CellChain> next;
                        for (const auto& v : variants)
                            for (const std::string& half : {cminus, cplus}) {
                                CellChain w = v;
                                w.push_back(half);
                                next.push_back(std::move(w));
                            }
                        variants = std::move(next);
                    } else {
                        for (auto& v : variants)
                            v.push_back(f);
                    }
                }
                for (auto& v : variants)
                    rewritten.add(coef, std::move(v));
            }
            rewritten.normalize();
            d.flow = std::move(rewritten);
        }
        y.cells.push_back(std::move(d));
    }
    return {std::move(y), detail::identity_injection(x.states)};
}

// ---------------------------------------------------------------------------
// Grid subdivision of a precubical set.  Axis i of every cube is cut into
// factors[i-1] pieces.  Face identifications force the factors of the axes
// spanned by any cube of dimension >= 2 to agree, which is validated up
// front.  Original vertices keep their identifiers.
// ---------------------------------------------------------------------------

namespace detail {

// Level of a grid cell along one axis: an interval [t, t+1] or a cut {t}.
struct GridLevel {
    bool interval = true;
    int t = 0;
    bool operator==(const GridLevel&) const = default;
    bool operator<(const GridLevel& o) const
    {
        if (interval != o.interval)
            return interval < o.interval; // cuts order before intervals
        return t < o.t;
    }
};
using GridCell = std::vector<GridLevel>;

inline std::string grid_cell_id(const std::string& cube, const GridCell& g)
{
    std::string out = cube + "@";
    for (std::size_t i = 0; i < g.size(); ++i) {
        if (i)
            out += ",";
        out += g[i].interval ? std::to_string(g[i].t) : "c" + std::to_string(g[i].t);
    }
    return out;
}

} // namespace detail

inline PrecubicalSet subdivide_precubical(const PrecubicalSet& k, std::vector<int> factors)
{
    {
        ValidationReport rep = validate(k);
        if (!rep.ok())
            throw InputError("subdivide_precubical: invalid precubical set:\n" + rep.str());
    }
    const int maxdim = k.max_dim();
    if (static_cast<int>(factors.size()) < maxdim)
        throw InputError("subdivide_precubical: need a factor for each of " +
                         std::to_string(maxdim) + " axes");
    for (int f : factors)
        if (f < 1)
            throw InputError("subdivide_precubical: factors must be >= 1");
    // Face identifications: removing axis i from a cube's factor vector must
    // reproduce the face's own factor vector, so any cube of dimension n >= 2
    // forces factors[0..n-1] to be equal.
    for (int n = 2; n <= maxdim; ++n)
        if (!k.cubes[static_cast<std::size_t>(n)].empty())
            for (int i = 1; i < n; ++i)
                if (factors[static_cast<std::size_t>(i)] != factors[0])
                    throw InputError(
                        "subdivide_precubical: factors shared across the faces of a " +
                        std::to_string(n) + "-cube must be equal");

    using detail::GridCell;
    using detail::GridLevel;

    auto dim_index = k.dim_index();
    auto axis_factor = [&](int axis) { return factors[static_cast<std::size_t>(axis - 1)]; };

    auto is_interior = [&](const GridCell& g) {
        for (std::size_t i = 0; i < g.size(); ++i)
            if (!g[i].interval &&
                (g[i].t == 0 || g[i].t == axis_factor(static_cast<int>(i) + 1)))
                return false;
        return true;
    };

    // Resolve a possibly-boundary grid cell to its canonical interior
    // representative (cube, grid cell); confluent by the cubical identities.
    std::function<std::pair<std::string, GridCell>(const std::string&, GridCell)> resolve =
        [&](const std::string& cube, GridCell g) -> std::pair<std::string, GridCell> {
        for (std::size_t i = 0; i < g.size(); ++i) {
            if (g[i].interval)
                continue;
            const int m = axis_factor(static_cast<int>(i) + 1);
            if (g[i].t == 0 || g[i].t == m) {
                const int alpha = g[i].t == 0 ? 0 : 1;
                const std::string& face = k.face(cube, alpha, static_cast<int>(i) + 1);
                GridCell sub = g;
                sub.erase(sub.begin() + static_cast<std::ptrdiff_t>(i));
                return resolve(face, std::move(sub));
            }
        }
        return {cube, std::move(g)};
    };

    // Enumerate interior grid cells of one cube, lexicographically.
    auto interior_cells = [&](int n) {
        std::vector<GridCell> out;
        GridCell cur;
        std::function<void()> rec = [&]() {
            if (static_cast<int>(cur.size()) == n) {
                out.push_back(cur);
                return;
            }
            const int m = axis_factor(static_cast<int>(cur.size()) + 1);
            for (int t = 1; t < m; ++t) { // interior cuts
                cur.push_back({false, t});
                rec();
                cur.pop_back();
            }
            for (int t = 0; t < m; ++t) { // intervals
                cur.push_back({true, t});
                rec();
                cur.pop_back();
            }
        };
        rec();
        std::sort(out.begin(), out.end());
        return out;
    };

    auto covers_cube = [&](int n, const GridCell& g) {
        for (int i = 0; i < n; ++i)
            if (!g[static_cast<std::size_t>(i)].interval || axis_factor(i + 1) != 1)
                return false;
        return true;
    };

    PrecubicalSet out;
    out.cubes.assign(static_cast<std::size_t>(maxdim) + 1, {});
    std::map<std::pair<std::string, GridCell>, std::string> name;

    for (std::size_t n = 0; n < k.cubes.size(); ++n)
        for (const auto& cube : k.cubes[n]) {
            for (const auto& g : interior_cells(static_cast<int>(n))) {
                if (!is_interior(g))
                    continue;
                int gdim = 0;
                for (const auto& lvl : g)
                    gdim += lvl.interval ? 1 : 0;
                std::string id = (n == 0 || covers_cube(static_cast<int>(n), g))
                                     ? cube
                                     : detail::grid_cell_id(cube, g);
                out.cubes[static_cast<std::size_t>(gdim)].push_back(id);
                name.emplace(std::make_pair(cube, g), std::move(id));
            }
        }

    auto canonical_name = [&](const std::string& cube, GridCell g) {
        auto rep = resolve(cube, std::move(g));
        auto it = name.find(rep);
        if (it == name.end())
            throw InputError("subdivide_precubical: internal resolution failure");
        return it->second;
    };

    for (std::size_t n = 1; n < k.cubes.size(); ++n)
        for (const auto& cube : k.cubes[n])
            for (const auto& g : interior_cells(static_cast<int>(n))) {
                if (!is_interior(g))
                    continue;
                int gdim = 0;
                for (const auto& lvl : g)
                    gdim += lvl.interval ? 1 : 0;
                if (gdim == 0)
                    continue;
                PrecubicalSet::FaceLists fl;
                for (std::size_t i = 0; i < g.size(); ++i) {
                    if (!g[i].interval)
                        continue;
                    GridCell front = g, back = g;
                    front[i] = {false, g[i].t};
                    back[i] = {false, g[i].t + 1};
                    fl.d0.push_back(canonical_name(cube, std::move(front)));
                    fl.d1.push_back(canonical_name(cube, std::move(back)));
                }
                out.faces.emplace(name.at({cube, g}), std::move(fl));
            }
    return out;
}

// ---------------------------------------------------------------------------
// Subdivision pipelines and the invariance harness.
// ---------------------------------------------------------------------------

struct SubdivisionOp {
    enum class Kind { Edge, Lens, Grid };
    Kind kind = Kind::Edge;
    std::string cell;         // edge / lens target
    int k = 1;                // edge pieces - 1
    std::vector<int> factors; // grid factors

    std::string describe() const
    {
        switch (kind) {
        case Kind::Edge:
            return "edge(" + cell + ", k=" + std::to_string(k) + ")";
        case Kind::Lens:
            return "lens(" + cell + ")";
        case Kind::Grid: {
            std::string f;
            for (std::size_t i = 0; i < factors.size(); ++i)
                f += (i ? "," : "") + std::to_string(factors[i]);
            return "grid(" + f + ")";
        }
        }
        return "?";
    }
};

inline std::vector<SubdivisionOp> parse_ops(const json& j)
{
    if (!j.is_array())
        throw InputError("op sequence JSON must be an array");
    std::vector<SubdivisionOp> ops;
    for (const auto& jo : j) {
        if (!jo.is_object() || !jo.contains("kind") || !jo.at("kind").is_string())
            throw InputError("each op needs a string 'kind'");
        SubdivisionOp op;
        const std::string kind = jo.at("kind").get<std::string>();
        if (kind == "edge") {
            op.kind = SubdivisionOp::Kind::Edge;
            if (!jo.contains("cell") || !jo.at("cell").is_string())
                throw InputError("edge op needs a 'cell'");
            op.cell = jo.at("cell").get<std::string>();
            if (!jo.contains("k") || !jo.at("k").is_number_integer())
                throw InputError("edge op needs an integer 'k'");
            op.k = jo.at("k").get<int>();
        } else if (kind == "lens") {
            op.kind = SubdivisionOp::Kind::Lens;
            if (!jo.contains("cell") || !jo.at("cell").is_string())
                throw InputError("lens op needs a 'cell'");
            op.cell = jo.at("cell").get<std::string>();
        } else if (kind == "grid") {
            op.kind = SubdivisionOp::Kind::Grid;
            if (!jo.contains("factors") || !jo.at("factors").is_array())
                throw InputError("grid op needs a 'factors' array");
            for (const auto& f : jo.at("factors")) {
                if (!f.is_number_integer())
                    throw InputError("grid factors must be integers");
                op.factors.push_back(f.get<int>());
            }
        } else {
            throw InputError("unknown op kind '" + kind + "'");
        }
        ops.push_back(std::move(op));
    }
    return ops;
}

/// Running object of a subdivision pipeline: stays precubical as long as
/// only grid ops have been applied, then realizes.
struct SubdivisionPipeline {
    std::optional<PrecubicalSet> precubical;
    std::optional<GlobularComplex> globular;

    static SubdivisionPipeline from(PrecubicalSet k)
    {
        SubdivisionPipeline p;
        p.precubical = std::move(k);
        return p;
    }
    static SubdivisionPipeline from(GlobularComplex x)
    {
        SubdivisionPipeline p;
        p.globular = std::move(x);
        return p;
    }

    const GlobularComplex& realized()
    {
        if (!globular)
            globular = realize(*precubical);
        return *globular;
    }

    void apply(const SubdivisionOp& op)
    {
        switch (op.kind) {
        case SubdivisionOp::Kind::Grid:
            if (!precubical)
                throw InputError("grid subdivision applies to precubical inputs only");
            precubical = subdivide_precubical(*precubical, op.factors);
            globular.reset(); // drop the cached realization
            return;
        case SubdivisionOp::Kind::Edge:
            globular = subdivide_edge(realized(), op.cell, op.k).first;
            precubical.reset();
            return;
        case SubdivisionOp::Kind::Lens:
            globular = subdivide_lens(realized(), op.cell).first;
            precubical.reset();
            return;
        }
    }
};

struct InvarianceReport {
    bool pass = true;

    struct DegreeRow {
        int degree = 0;
        HomologyGroup before;
        HomologyGroup after;
        bool equal = true;
    };
    std::vector<DegreeRow> branching;
    std::vector<DegreeRow> merging;

    struct Pi0Row {
        std::string state;
        int before = 0;
        int after = 0;
        bool equal = true;
    };
    std::vector<Pi0Row> pi0_branching;
    std::vector<Pi0Row> pi0_merging;

    json to_json() const
    {
        json out;
        out["pass"] = pass;
        auto rows = [](const std::vector<DegreeRow>& v) {
            json o = json::object();
            for (const auto& r : v) {
                json before = {{"rank", r.before.free_rank}, {"torsion", json::array()}};
                json after = {{"rank", r.after.free_rank}, {"torsion", json::array()}};
                for (const Int& t : r.before.torsion)
                    before["torsion"].push_back(to_int64(t));
                for (const Int& t : r.after.torsion)
                    after["torsion"].push_back(to_int64(t));
                o[std::to_string(r.degree)] = {
                    {"before", before}, {"after", after}, {"equal", r.equal}};
            }
            return o;
        };
        out["branching"] = rows(branching);
        out["merging"] = rows(merging);
        auto pi0rows = [](const std::vector<Pi0Row>& v) {
            json arr = json::array();
            for (const auto& r : v)
                arr.push_back({{"state", r.state},
                               {"before", r.before},
                               {"after", r.after},
                               {"equal", r.equal}});
            return arr;
        };
        out["pi0_branching"] = pi0rows(pi0_branching);
        out["pi0_merging"] = pi0rows(pi0_merging);
        return out;
    }

    std::string str() const
    {
        std::string out = pass ? "PASS\n" : "FAIL\n";
        auto side = [&out](const char* name, const std::vector<DegreeRow>& rows) {
            out += std::string(name) + ":\n";
            for (const auto& r : rows)
                out += "  H_" + std::to_string(r.degree) + ": " + r.before.str() + " -> " +
                       r.after.str() + (r.equal ? "" : "  << DIFFERS") + "\n";
        };
        side("branching", branching);
        side("merging", merging);
        for (const auto& r : pi0_branching)
            if (!r.equal)
                out += "  pi0(G^-_" + r.state + "): " + std::to_string(r.before) + " -> " +
                       std::to_string(r.after) + "  << DIFFERS\n";
        for (const auto& r : pi0_merging)
            if (!r.equal)
                out += "  pi0(G^+_" + r.state + "): " + std::to_string(r.before) + " -> " +
                       std::to_string(r.after) + "  << DIFFERS\n";
        return out;
    }
};

/// Degree-by-degree comparison of branching/merging homology plus per-state
/// component counts at the original states.
inline InvarianceReport compare_invariance(const GlobularComplex& before,
                                           const GlobularComplex& after,
                                           const StateInjection& inj)
{
    InvarianceReport rep;
    BranchingProfile pb0 = branching_profile(before);
    BranchingProfile pb1 = branching_profile(after);
    BranchingProfile pm0 = branching_profile(op(before));
    BranchingProfile pm1 = branching_profile(op(after));
    auto group_at = [](const std::map<int, HomologyGroup>& h, int n) {
        auto it = h.find(n);
        return it == h.end() ? HomologyGroup{} : it->second;
    };
    auto fill = [&](const std::map<int, HomologyGroup>& h0,
                    const std::map<int, HomologyGroup>& h1,
                    std::vector<InvarianceReport::DegreeRow>& rows) {
        int top = 0;
        if (!h0.empty())
            top = std::max(top, h0.rbegin()->first);
        if (!h1.empty())
            top = std::max(top, h1.rbegin()->first);
        for (int n = 0; n <= top; ++n) {
            InvarianceReport::DegreeRow r;
            r.degree = n;
            r.before = group_at(h0, n);
            r.after = group_at(h1, n);
            r.equal = r.before == r.after;
            if (!r.equal)
                rep.pass = false;
            rows.push_back(std::move(r));
        }
    };
    fill(pb0.homology, pb1.homology, rep.branching);
    fill(pm0.homology, pm1.homology, rep.merging);

    auto count_map = [](const BranchingProfile& p) {
        std::map<std::string, int> m;
        for (const auto& [s, c] : p.components)
            m.emplace(s, c);
        return m;
    };
    std::map<std::string, int> cb0 = count_map(pb0), cb1 = count_map(pb1);
    std::map<std::string, int> cm0 = count_map(pm0), cm1 = count_map(pm1);
    for (const auto& s : before.states) {
        const std::string& t = inj.at(s);
        InvarianceReport::Pi0Row rb{s, cb0.at(s), cb1.at(t), true};
        rb.equal = rb.before == rb.after;
        if (!rb.equal)
            rep.pass = false;
        rep.pi0_branching.push_back(rb);
        InvarianceReport::Pi0Row rm{s, cm0.at(s), cm1.at(t), true};
        rm.equal = rm.before == rm.after;
        if (!rm.equal)
            rep.pass = false;
        rep.pi0_merging.push_back(rm);
    }
    return rep;
}

namespace detail {

template <typename Input>
InvarianceReport check_invariance_impl(const Input& input,
                                       const std::vector<SubdivisionOp>& ops)
{
    SubdivisionPipeline before = SubdivisionPipeline::from(input);
    SubdivisionPipeline after = SubdivisionPipeline::from(input);
    for (std::size_t i = 0; i < ops.size(); ++i) {
        try {
            after.apply(ops[i]);
        } catch (const InputError& err) {
            throw InputError("op " + std::to_string(i + 1) + " [" + ops[i].describe() +
                             "]: " + err.what());
        }
    }
    const GlobularComplex& x0 = before.realized();
    const GlobularComplex& x1 = after.realized();
    return compare_invariance(x0, x1, identity_injection(x0.states));
}

} // namespace detail

inline InvarianceReport check_invariance(const PrecubicalSet& k,
                                         const std::vector<SubdivisionOp>& ops)
{
    return detail::check_invariance_impl(k, ops);
}

inline InvarianceReport check_invariance(const GlobularComplex& x,
                                         const std::vector<SubdivisionOp>& ops)
{
    return detail::check_invariance_impl(x, ops);
}

} // namespace digerm
