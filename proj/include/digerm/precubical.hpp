#pragma once

#include "digerm/integers.hpp"
#include "digerm/validation.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

namespace digerm {

/// A finite precubical set: graded cube identifiers plus front (d0) and back
/// (d1) face lists for every cube of dimension >= 1.  Identifiers are opaque
/// strings; the order within a dimension is the file order and fixes all
/// downstream matrix column orders.
struct PrecubicalSet {
    /// cubes[n] = ordered identifiers of the n-cubes.
    std::vector<std::vector<std::string>> cubes;

    struct FaceLists {
        std::vector<std::string> d0; // front faces d0_1 .. d0_n
        std::vector<std::string> d1; // back faces  d1_1 .. d1_n
        bool operator==(const FaceLists&) const = default;
    };
    std::map<std::string, FaceLists> faces;

    bool operator==(const PrecubicalSet&) const = default;

    int max_dim() const
    {
        for (int n = static_cast<int>(cubes.size()) - 1; n >= 0; --n)
            if (!cubes[static_cast<std::size_t>(n)].empty())
                return n;
        return 0;
    }

    std::size_t cube_count() const
    {
        std::size_t c = 0;
        for (const auto& level : cubes)
            c += level.size();
        return c;
    }

    std::vector<std::size_t> census() const
    {
        std::vector<std::size_t> out;
        for (const auto& level : cubes)
            out.push_back(level.size());
        while (!out.empty() && out.back() == 0)
            out.pop_back();
        return out;
    }

    /// Drops trailing empty dimension levels so that structural equality
    /// and serialization agree.
    void trim_empty_levels()
    {
        while (cubes.size() > 1 && cubes.back().empty())
            cubes.pop_back();
    }

    /// Dimension lookup; -1 when the id is unknown.
    std::map<std::string, int> dim_index() const
    {
        std::map<std::string, int> idx;
        for (std::size_t n = 0; n < cubes.size(); ++n)
            for (const auto& id : cubes[n])
                idx.emplace(id, static_cast<int>(n));
        return idx;
    }

    const std::string& face(const std::string& id, int alpha, int i) const
    {
        auto it = faces.find(id);
        if (it == faces.end())
            throw InputError("no face data for cube '" + id + "'");
        const auto& list = alpha == 0 ? it->second.d0 : it->second.d1;
        if (i < 1 || static_cast<std::size_t>(i) > list.size())
            throw InputError("face index out of range for cube '" + id + "'");
        return list[static_cast<std::size_t>(i - 1)];
    }
};

/// Checks the precubical identities d^a_i d^b_j = d^b_{j-1} d^a_i (i < j)
/// together with reference integrity.  The report content is the result;
/// nothing throws.
inline ValidationReport validate(const PrecubicalSet& k)
{
    ValidationReport rep;
    auto dim = k.dim_index();

    // id uniqueness across all dimensions
    {
        std::set<std::string> seen;
        std::size_t total = 0;
        for (const auto& level : k.cubes)
            for (const auto& id : level) {
                ++total;
                seen.insert(id);
            }
        if (seen.size() != total) {
            std::map<std::string, int> count;
            for (const auto& level : k.cubes)
                for (const auto& id : level)
                    if (++count[id] == 2)
                        rep.add("duplicate-id", id, "identifier used more than once");
        }
    }

    for (std::size_t n = 1; n < k.cubes.size(); ++n) {
        for (const auto& id : k.cubes[n]) {
            auto it = k.faces.find(id);
            if (it == k.faces.end()) {
                rep.add("missing-faces", id, "cube of dimension " + std::to_string(n) +
                                                 " has no face lists");
                continue;
            }
            const auto& fl = it->second;
            if (fl.d0.size() != n || fl.d1.size() != n) {
                rep.add("bad-arity", id,
                        "face lists must both have length " + std::to_string(n));
                continue;
            }
            for (int alpha = 0; alpha <= 1; ++alpha) {
                const auto& list = alpha == 0 ? fl.d0 : fl.d1;
                for (std::size_t i = 0; i < n; ++i) {
                    auto dit = dim.find(list[i]);
                    if (dit == dim.end() || dit->second != static_cast<int>(n) - 1)
                        rep.add("dangling-face", id,
                                "d" + std::to_string(alpha) + "_" + std::to_string(i + 1) +
                                    " = '" + list[i] + "' is not an existing " +
                                    std::to_string(n - 1) + "-cube",
                                {alpha, static_cast<long long>(i + 1)});
                }
            }
        }
    }
    if (!rep.ok())
        return rep; // identities need intact references to be evaluated

    for (std::size_t n = 2; n < k.cubes.size(); ++n) {
        for (const auto& id : k.cubes[n]) {
            for (int i = 1; i < static_cast<int>(n); ++i)
                for (int j = i + 1; j <= static_cast<int>(n); ++j)
                    for (int alpha = 0; alpha <= 1; ++alpha)
                        for (int beta = 0; beta <= 1; ++beta) {
                            const std::string& lhs = k.face(k.face(id, beta, j), alpha, i);
                            const std::string& rhs = k.face(k.face(id, alpha, i), beta, j - 1);
                            if (lhs != rhs)
                                rep.add("identity", id,
                                        "d" + std::to_string(alpha) + "_" + std::to_string(i) +
                                            " d" + std::to_string(beta) + "_" + std::to_string(j) +
                                            " = " + lhs + " but d" + std::to_string(beta) + "_" +
                                            std::to_string(j - 1) + " d" + std::to_string(alpha) +
                                            "_" + std::to_string(i) + " = " + rhs,
                                        {alpha, i, beta, j});
                        }
        }
    }
    return rep;
}

namespace detail {

// Cubes of the full n-cube are words over {0,1,*}; d^a_i replaces the i-th
// star with the digit a.
inline std::string cube_word_face(const std::string& w, int alpha, int i)
{
    std::string out = w;
    int seen = 0;
    for (char& ch : out)
        if (ch == '*' && ++seen == i) {
            ch = alpha == 0 ? '0' : '1';
            return out;
        }
    throw InputError("face index out of range for word '" + w + "'");
}

} // namespace detail

/// The full combinatorial n-cube; C(n,k)*2^(n-k) cubes in dimension k.
inline PrecubicalSet gen_cube(int n)
{
    if (n < 0)
        throw InputError("gen_cube: n must be nonnegative");
    PrecubicalSet k;
    k.cubes.assign(static_cast<std::size_t>(n) + 1, {});
    if (n == 0) {
        k.cubes[0].push_back("pt");
        return k;
    }
    // enumerate words over {0,1,*} grouped by star count, lexicographically
    std::vector<std::string> words;
    words.emplace_back("");
    for (int pos = 0; pos < n; ++pos) {
        std::vector<std::string> next;
        for (const auto& w : words)
            for (char c : {'0', '1', '*'})
                next.push_back(w + c);
        words = std::move(next);
    }
    std::sort(words.begin(), words.end());
    for (const auto& w : words) {
        int stars = static_cast<int>(std::count(w.begin(), w.end(), '*'));
        k.cubes[static_cast<std::size_t>(stars)].push_back(w);
        if (stars > 0) {
            PrecubicalSet::FaceLists fl;
            for (int i = 1; i <= stars; ++i) {
                fl.d0.push_back(detail::cube_word_face(w, 0, i));
                fl.d1.push_back(detail::cube_word_face(w, 1, i));
            }
            k.faces.emplace(w, std::move(fl));
        }
    }
    return k;
}

inline const std::vector<std::string>& catalog_names()
{
    static const std::vector<std::string> names = {
        "hollow_square", "filled_square", "torus",
        "wedge_two_edges", "directed_circle", "two_step_path"};
    return names;
}

/// Named regression complexes.
inline PrecubicalSet gen_example(const std::string& name)
{
    PrecubicalSet k;
    auto edge = [&k](const std::string& id, const std::string& s, const std::string& t) {
        k.cubes[1].push_back(id);
        k.faces.emplace(id, PrecubicalSet::FaceLists{{s}, {t}});
    };
    if (name == "filled_square" || name == "hollow_square") {
        k.cubes.assign(3, {});
        k.cubes[0] = {"v00", "v01", "v10", "v11"};
        edge("a", "v00", "v01");
        edge("b", "v00", "v10");
        edge("c", "v10", "v11");
        edge("d", "v01", "v11");
        if (name == "filled_square") {
            k.cubes[2].push_back("s");
            k.faces.emplace("s", PrecubicalSet::FaceLists{{"a", "b"}, {"c", "d"}});
        }
        k.trim_empty_levels();
        return k;
    }
    if (name == "torus") {
        k.cubes.assign(3, {});
        k.cubes[0] = {"v"};
        edge("a", "v", "v");
        edge("b", "v", "v");
        k.cubes[2].push_back("s");
        k.faces.emplace("s", PrecubicalSet::FaceLists{{"b", "a"}, {"b", "a"}});
        return k;
    }
    if (name == "wedge_two_edges") {
        k.cubes.assign(2, {});
        k.cubes[0] = {"v", "w1", "w2"};
        edge("e1", "v", "w1");
        edge("e2", "v", "w2");
        return k;
    }
    if (name == "directed_circle") {
        k.cubes.assign(2, {});
        k.cubes[0] = {"v"};
        edge("a", "v", "v");
        return k;
    }
    if (name == "two_step_path") {
        k.cubes.assign(2, {});
        k.cubes[0] = {"v0", "v1", "v2"};
        edge("e1", "v0", "v1");
        edge("e2", "v1", "v2");
        return k;
    }
    std::string names;
    for (const auto& n : catalog_names())
        names += (names.empty() ? "" : ", ") + n;
    throw InputError("unknown catalog complex '" + name + "' (valid: " + names + ")");
}

// ---------------------------------------------------------------------------
// JSON wire format:
//   {"format": "precubical",
//    "cubes": {"0": ["v", ...], "1": [...], ...},
//    "faces": {"e": {"d0": [...], "d1": [...]}, ...}}
// Unknown keys are rejected.
// ---------------------------------------------------------------------------

inline json emit_json(const PrecubicalSet& k)
{
    json out;
    out["format"] = "precubical";
    json cubes = json::object();
    std::size_t top = 0;
    for (std::size_t n = 0; n < k.cubes.size(); ++n)
        if (!k.cubes[n].empty())
            top = n;
    for (std::size_t n = 0; n <= top && n < k.cubes.size(); ++n)
        cubes[std::to_string(n)] = k.cubes[n];
    out["cubes"] = cubes;
    json faces = json::object();
    for (std::size_t n = 1; n < k.cubes.size(); ++n)
        for (const auto& id : k.cubes[n]) {
            auto it = k.faces.find(id);
            if (it == k.faces.end())
                continue;
            faces[id] = {{"d0", it->second.d0}, {"d1", it->second.d1}};
        }
    out["faces"] = faces;
    return out;
}

inline PrecubicalSet parse_precubical(const json& j)
{
    if (!j.is_object())
        throw InputError("precubical JSON must be an object");
    for (const auto& [key, value] : j.items()) {
        (void)value;
        if (key != "format" && key != "cubes" && key != "faces")
            throw InputError("unknown key '" + key + "' in precubical JSON");
    }
    if (j.contains("format") && j.at("format") != "precubical")
        throw InputError("format key must be 'precubical'");
    if (!j.contains("cubes") || !j.at("cubes").is_object())
        throw InputError("precubical JSON needs a 'cubes' object");

    PrecubicalSet k;
    for (const auto& [key, value] : j.at("cubes").items()) {
        std::size_t pos = 0;
        int n = -1;
        try {
            n = std::stoi(key, &pos);
        } catch (const std::exception&) {
            throw InputError("cube dimension key '" + key + "' is not a number");
        }
        if (pos != key.size() || n < 0)
            throw InputError("cube dimension key '" + key + "' is not a nonnegative integer");
        if (!value.is_array())
            throw InputError("cubes." + key + " must be an array");
        if (k.cubes.size() <= static_cast<std::size_t>(n))
            k.cubes.resize(static_cast<std::size_t>(n) + 1);
        for (const auto& id : value) {
            if (!id.is_string())
                throw InputError("cube identifiers must be strings");
            k.cubes[static_cast<std::size_t>(n)].push_back(id.get<std::string>());
        }
    }
    if (j.contains("faces")) {
        if (!j.at("faces").is_object())
            throw InputError("'faces' must be an object");
        for (const auto& [id, fl] : j.at("faces").items()) {
            if (!fl.is_object())
                throw InputError("faces." + id + " must be an object");
            for (const auto& [key, value] : fl.items()) {
                (void)value;
                if (key != "d0" && key != "d1")
                    throw InputError("unknown key '" + key + "' in faces." + id);
            }
            PrecubicalSet::FaceLists lists;
            for (const char* key : {"d0", "d1"}) {
                if (!fl.contains(key) || !fl.at(key).is_array())
                    throw InputError("faces." + id + " needs array '" + key + "'");
                auto& dst = key[1] == '0' ? lists.d0 : lists.d1;
                for (const auto& f : fl.at(key)) {
                    if (!f.is_string())
                        throw InputError("face identifiers must be strings");
                    dst.push_back(f.get<std::string>());
                }
            }
            k.faces.emplace(id, std::move(lists));
        }
    }
    k.trim_empty_levels();
    return k;
}

// ---------------------------------------------------------------------------
// Random generator for fuzzing.  Builds cubes bottom-up; whenever a higher
// cube needs a face that does not exist yet, the face is created on the spot
// (repair by propagation), so every instance is valid without rejection
// sampling.  Dimension <= 3, at most `max_cubes` cubes in total.
// ---------------------------------------------------------------------------

class RandomPrecubical {
public:
    explicit RandomPrecubical(std::mt19937_64& rng, std::size_t max_cubes = 200)
        : rng_(rng), max_cubes_(max_cubes)
    {
        k_.cubes.assign(4, {});
    }

    PrecubicalSet generate()
    {
        const int nv = pick(1, 8);
        for (int i = 0; i < nv; ++i)
            add_vertex();
        const int ne = pick(0, 14);
        for (int i = 0; i < ne && k_.cube_count() < max_cubes_; ++i)
            add_random_edge();
        const int ns = pick(0, 8);
        for (int i = 0; i < ns && k_.cube_count() + 4 < max_cubes_; ++i)
            add_random_square();
        const int nc = pick(0, 3);
        for (int i = 0; i < nc && k_.cube_count() + 27 < max_cubes_; ++i)
            add_random_cube3();
        k_.trim_empty_levels();
        return k_;
    }

private:
    std::mt19937_64& rng_;
    std::size_t max_cubes_;
    PrecubicalSet k_;
    int next_id_ = 0;

    int pick(int lo, int hi) { return static_cast<int>(rng_() % (hi - lo + 1)) + lo; }

    std::string fresh(const char* prefix) { return std::string(prefix) + std::to_string(next_id_++); }

    const std::string& src(const std::string& e) const { return k_.faces.at(e).d0[0]; }
    const std::string& tgt(const std::string& e) const { return k_.faces.at(e).d1[0]; }

    std::string add_vertex()
    {
        std::string id = fresh("v");
        k_.cubes[0].push_back(id);
        return id;
    }

    std::string add_edge(const std::string& s, const std::string& t)
    {
        std::string id = fresh("e");
        k_.cubes[1].push_back(id);
        k_.faces.emplace(id, PrecubicalSet::FaceLists{{s}, {t}});
        return id;
    }

    std::string random_vertex() { return k_.cubes[0][rng_() % k_.cubes[0].size()]; }

    std::string add_random_edge() { return add_edge(random_vertex(), random_vertex()); }

    std::string find_or_make_edge(const std::string& s, const std::string& t)
    {
        std::vector<std::string> hits;
        for (const auto& e : k_.cubes[1])
            if (src(e) == s && tgt(e) == t)
                hits.push_back(e);
        if (!hits.empty() && (rng_() & 1))
            return hits[rng_() % hits.size()];
        return add_edge(s, t);
    }

    std::string add_square(const std::string& a, const std::string& b, const std::string& c,
                           const std::string& d)
    {
        // d0 = [a, b], d1 = [c, d]; valid iff src(a)=src(b), tgt(a)=src(d),
        // tgt(b)=src(c), tgt(c)=tgt(d).
        std::string id = fresh("s");
        k_.cubes[2].push_back(id);
        k_.faces.emplace(id, PrecubicalSet::FaceLists{{a, b}, {c, d}});
        return id;
    }

    std::string find_or_make_square(const std::string& a, const std::string& b,
                                    const std::string& c, const std::string& d)
    {
        std::vector<std::string> hits;
        for (const auto& s : k_.cubes[2]) {
            const auto& fl = k_.faces.at(s);
            if (fl.d0[0] == a && fl.d0[1] == b && fl.d1[0] == c && fl.d1[1] == d)
                hits.push_back(s);
        }
        if (!hits.empty() && (rng_() & 1))
            return hits[rng_() % hits.size()];
        return add_square(a, b, c, d);
    }

    void add_random_square()
    {
        if (k_.cubes[1].empty())
            add_random_edge();
        const std::string a = k_.cubes[1][rng_() % k_.cubes[1].size()];
        // need d with src(d) = tgt(a)
        std::vector<std::string> ds;
        for (const auto& e : k_.cubes[1])
            if (src(e) == tgt(a))
                ds.push_back(e);
        const std::string d = ds.empty() ? add_edge(tgt(a), random_vertex())
                                         : ds[rng_() % ds.size()];
        // need a second path src(a) -> tgt(d): b then c
        std::vector<std::pair<std::string, std::string>> pairs;
        for (const auto& b : k_.cubes[1]) {
            if (src(b) != src(a))
                continue;
            for (const auto& c : k_.cubes[1])
                if (src(c) == tgt(b) && tgt(c) == tgt(d))
                    pairs.emplace_back(b, c);
        }
        std::string b, c;
        if (!pairs.empty()) {
            auto& p = pairs[rng_() % pairs.size()];
            b = p.first;
            c = p.second;
        } else {
            std::string mid = random_vertex();
            b = add_edge(src(a), mid);
            c = add_edge(mid, tgt(d));
        }
        add_square(a, b, c, d);
    }

    void add_random_cube3()
    {
        // Corner skeleton: any assignment of existing vertices to {0,1}^3.
        std::map<int, std::string> corner;
        for (int w = 0; w < 8; ++w)
            corner[w] = random_vertex();
        auto bit = [](int w, int axis) { return (w >> (axis - 1)) & 1; };
        // Edge positions: (axis, other coords) -> edge from corner(axis=0)
        // to corner(axis=1).
        std::map<std::pair<int, int>, std::string> edge_at; // (axis, base word) -> id
        for (int axis = 1; axis <= 3; ++axis)
            for (int w = 0; w < 8; ++w) {
                if (bit(w, axis))
                    continue;
                int w1 = w | (1 << (axis - 1));
                edge_at[{axis, w}] = find_or_make_edge(corner[w], corner[w1]);
            }
        // Square positions: fixed axis j at value beta; spans axes p < q.
        auto square_at = [&](int j, int beta) {
            int p = 0, q = 0;
            for (int axis = 1; axis <= 3; ++axis)
                if (axis != j)
                    (p == 0 ? p : q) = axis;
            int base = beta << (j - 1);
            // local axis 1 = p, local axis 2 = q
            const std::string a = edge_at[{q, base}];                       // d0_1: q-edge at p=0
            const std::string b = edge_at[{p, base}];                       // d0_2: p-edge at q=0
            const std::string c = edge_at[{q, base | (1 << (p - 1))}];      // d1_1: q-edge at p=1
            const std::string d = edge_at[{p, base | (1 << (q - 1))}];      // d1_2: p-edge at q=1
            return find_or_make_square(a, b, c, d);
        };
        std::vector<std::string> f0(4), f1(4);
        for (int j = 1; j <= 3; ++j) {
            f0[static_cast<std::size_t>(j)] = square_at(j, 0);
            f1[static_cast<std::size_t>(j)] = square_at(j, 1);
        }
        std::string id = fresh("c");
        k_.cubes[3].push_back(id);
        k_.faces.emplace(id, PrecubicalSet::FaceLists{{f0[1], f0[2], f0[3]},
                                                      {f1[1], f1[2], f1[3]}});
    }
};

inline PrecubicalSet random_precubical(std::mt19937_64& rng, std::size_t max_cubes = 200)
{
    return RandomPrecubical(rng, max_cubes).generate();
}

} // namespace digerm
