#pragma once

#include "digerm/globular.hpp"
#include "digerm/matrix.hpp"

#include <map>
#include <numeric>
#include <string>
#include <unordered_map>
#include <vector>

namespace digerm {

/// Cellular model of the branching (or merging) space at one state.  A
/// globular cell of dimension k+1 with the right endpoint contributes one
/// k-cell, keeping its identifier; boundary matrices are the stored signed
/// incidence restricted to that state.
struct CWComplexData {
    std::string state_tag;
    /// cells[k] = ids of the degree-k cells, in attachment order.
    std::vector<std::vector<std::string>> cells;
    /// boundary[k] : degree k -> degree k-1 (rows = (k-1)-cells, cols =
    /// k-cells); boundary[0] is a 0 x rank_0 placeholder.
    std::vector<Mat> boundary;

    bool operator==(const CWComplexData&) const = default;

    bool empty() const
    {
        for (const auto& level : cells)
            if (!level.empty())
                return false;
        return true;
    }

    std::vector<std::size_t> f_vector() const
    {
        std::vector<std::size_t> f;
        for (const auto& level : cells)
            f.push_back(level.size());
        while (!f.empty() && f.back() == 0)
            f.pop_back();
        return f;
    }
};

/// All branching spaces in one pass over the cell list, in state order.
/// Linear in the complex size; the per-state accessor below filters the
/// same construction for a single state.
inline std::vector<std::pair<std::string, CWComplexData>>
branching_spaces(const GlobularComplex& x)
{
    std::vector<std::pair<std::string, CWComplexData>> out;
    out.reserve(x.states.size());
    std::unordered_map<std::string, std::size_t> state_pos;
    for (const auto& s : x.states) {
        state_pos.emplace(s, out.size());
        CWComplexData cw;
        cw.state_tag = s;
        out.emplace_back(s, std::move(cw));
    }
    struct Slot {
        std::size_t state = 0;
        std::size_t row = 0;
    };
    std::unordered_map<std::string, Slot> where;
    where.reserve(x.cells.size());
    for (const auto& c : x.cells) {
        auto it = state_pos.find(c.src);
        if (it == state_pos.end())
            throw InputError("branching_spaces: cell '" + c.id + "' has unknown src '" +
                             c.src + "'");
        CWComplexData& cw = out[it->second].second;
        const std::size_t deg = static_cast<std::size_t>(c.dim - 1);
        if (cw.cells.size() <= deg)
            cw.cells.resize(deg + 1);
        where[c.id] = {it->second, cw.cells[deg].size()};
        cw.cells[deg].push_back(c.id);
    }
    for (auto& [s, cw] : out) {
        (void)s;
        cw.boundary.resize(cw.cells.size());
        if (!cw.cells.empty())
            cw.boundary[0] = Mat(0, cw.cells[0].size());
        for (std::size_t k = 1; k < cw.cells.size(); ++k)
            cw.boundary[k] = Mat(cw.cells[k - 1].size(), cw.cells[k].size());
    }
    for (const auto& c : x.cells) {
        if (c.dim < 2)
            continue;
        const Slot& slot = where.at(c.id);
        CWComplexData& cw = out[slot.state].second;
        const std::size_t k = static_cast<std::size_t>(c.dim - 1);
        for (const auto& [id, coef] : c.branch.terms) {
            auto it = where.find(id);
            if (it == where.end() || it->second.state != slot.state)
                throw InputError("branching_spaces: boundary of '" + c.id +
                                 "' references '" + id + "' outside state '" + c.src + "'");
            cw.boundary[k](it->second.row, slot.row) += coef;
        }
    }
    return out;
}

inline CWComplexData branching_space(const GlobularComplex& x, const std::string& alpha)
{
    if (!x.has_state(alpha))
        throw InputError("branching_space: unknown state '" + alpha + "'");
    for (auto& [s, cw] : branching_spaces(x))
        if (s == alpha)
            return std::move(cw);
    return {};
}

/// Merging space: the branching space of the time-reversed complex.
inline CWComplexData merging_space(const GlobularComplex& x, const std::string& alpha)
{
    return branching_space(op(x), alpha);
}

/// Path components of the 0-skeleton under the 1-cells, plus the
/// augmentation to the state tag.  Components are numbered by first
/// appearance in cell order.
struct ComponentMap {
    std::string state_tag;
    std::map<std::string, int> component_of;
    int count = 0;
};

inline ComponentMap pi0(const CWComplexData& cw)
{
    ComponentMap cm;
    cm.state_tag = cw.state_tag;
    if (cw.cells.empty())
        return cm;
    const auto& verts = cw.cells[0];
    std::vector<std::size_t> parent(verts.size());
    std::iota(parent.begin(), parent.end(), std::size_t{0});
    auto find = [&](std::size_t a) {
        while (parent[a] != a) {
            parent[a] = parent[parent[a]];
            a = parent[a];
        }
        return a;
    };
    auto unite = [&](std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a != b)
            parent[std::max(a, b)] = std::min(a, b);
    };
    if (cw.cells.size() > 1) {
        const Mat& d1 = cw.boundary[1];
        for (std::size_t col = 0; col < d1.cols(); ++col) {
            std::size_t first = verts.size();
            for (std::size_t r = 0; r < d1.rows(); ++r) {
                if (d1(r, col) == 0)
                    continue;
                if (first == verts.size())
                    first = r;
                else
                    unite(first, r);
            }
        }
    }
    std::map<std::size_t, int> label;
    for (std::size_t i = 0; i < verts.size(); ++i) {
        std::size_t root = find(i);
        auto it = label.find(root);
        if (it == label.end())
            it = label.emplace(root, cm.count++).first;
        cm.component_of.emplace(verts[i], it->second);
    }
    return cm;
}

/// DOT rendering of the 1-skeleton: 0-cells as nodes named by the
/// originating globular cell, 1-cells as undirected edges.
inline std::string to_dot(const CWComplexData& cw, const std::string& graph_name)
{
    std::string out = "graph \"" + graph_name + "\" {\n";
    if (!cw.cells.empty())
        for (const auto& v : cw.cells[0])
            out += "  \"" + v + "\";\n";
    if (cw.cells.size() > 1) {
        const Mat& d1 = cw.boundary[1];
        for (std::size_t col = 0; col < d1.cols(); ++col) {
            std::vector<std::string> ends;
            for (std::size_t r = 0; r < d1.rows(); ++r)
                if (d1(r, col) != 0)
                    ends.push_back(cw.cells[0][r]);
            const std::string& label = cw.cells[1][col];
            if (ends.size() >= 2) {
                for (std::size_t t = 1; t < ends.size(); ++t)
                    out += "  \"" + ends[0] + "\" -- \"" + ends[t] + "\" [label=\"" +
                           label + "\"];\n";
            } else if (ends.size() == 1) {
                out += "  \"" + ends[0] + "\" -- \"" + ends[0] + "\" [label=\"" + label +
                       "\"];\n";
            }
        }
    }
    out += "}\n";
    return out;
}

inline json dump_json(const CWComplexData& cw)
{
    json out;
    out["state"] = cw.state_tag;
    json cells = json::object();
    for (std::size_t k = 0; k < cw.cells.size(); ++k)
        cells[std::to_string(k)] = cw.cells[k];
    out["cells"] = cells;
    json boundary = json::object();
    for (std::size_t k = 1; k < cw.boundary.size(); ++k) {
        json rows = json::array();
        for (std::size_t i = 0; i < cw.boundary[k].rows(); ++i) {
            json r = json::array();
            for (std::size_t j = 0; j < cw.boundary[k].cols(); ++j)
                r.push_back(to_int64(cw.boundary[k](i, j)));
            rows.push_back(std::move(r));
        }
        boundary[std::to_string(k)] = std::move(rows);
    }
    out["boundary"] = std::move(boundary);
    return out;
}

} // namespace digerm
