#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "digerm/fuzz.hpp"
#include "digerm/subdivision.hpp"

#include <random>

using namespace digerm;

namespace {

StateInjection identity_on(const GlobularComplex& x)
{
    StateInjection inj;
    for (const auto& s : x.states)
        inj.map.emplace(s, s);
    return inj;
}

} // namespace

TEST_CASE("edge subdivision of the directed interval")
{
    GlobularComplex g = globe(0);
    auto [y, inj] = subdivide_edge(g, "i", 1);
    CHECK(y.states.size() == 3);
    CHECK(y.cells.size() == 2);
    CHECK(validate_complex(y).ok());
    CHECK(inj.at("0") == "0");
    auto h = branching_homology(y);
    CHECK(h.at(0) == HomologyGroup{1, {}});
    CHECK(compare_invariance(g, y, inj).pass);
}

TEST_CASE("edge subdivision with k = 0 is rejected")
{
    CHECK_THROWS_AS((void)subdivide_edge(globe(0), "i", 0), InputError);
}

TEST_CASE("edge subdivision rejects wrong dimensions and unknown cells")
{
    GlobularComplex x = realize(gen_example("filled_square"));
    CHECK_THROWS_AS((void)subdivide_edge(x, "s", 1), InputError);
    CHECK_THROWS_AS((void)subdivide_edge(x, "nope", 1), InputError);
}

TEST_CASE("edge subdivision of a square edge keeps all homology")
{
    GlobularComplex x = realize(gen_example("filled_square"));
    for (const char* e : {"a", "b", "c", "d"}) {
        auto [y, inj] = subdivide_edge(x, e, 2);
        CHECK(validate_complex(y).ok());
        InvarianceReport rep = compare_invariance(x, y, inj);
        CHECK_MESSAGE(rep.pass, "edge ", e, ":\n", rep.str());
        // census deltas: k new states, k new edges, everything else fixed
        CHECK(y.states.size() == x.states.size() + 2);
        auto cx = x.cell_census();
        auto cy = y.cell_census();
        CHECK(cy[1] == cx[1] + 2);
        CHECK(cy[2] == cx[2]);
    }
}

TEST_CASE("edge subdivision rewrites chains to the full subchain")
{
    GlobularComplex x = realize(gen_example("filled_square"));
    auto [y, inj] = subdivide_edge(x, "a", 2);
    (void)inj;
    const GlobularCell* s = y.find("s");
    REQUIRE(s);
    REQUIRE(s->flow.has_value());
    ChainSum expected;
    expected.add(1, {"a.1", "a.2", "a.3", "d"});
    expected.add(-1, {"b", "c"});
    expected.normalize();
    CHECK(*s->flow == expected);
    CHECK(s->branch.coef("a.1") == 1);
    CHECK(s->merge.coef("d") == -1);
}

TEST_CASE("lens subdivision of the globe interior")
{
    GlobularComplex g = globe(1);
    auto [y, inj] = subdivide_lens(g, "top");
    CHECK(y.states.size() == 3);
    CHECK(validate_complex(y).ok());
    // branching space at 0 is now the path  e1+ -- a -- e1-
    CWComplexData cw = branching_space(y, "0");
    CHECK(cw.f_vector() == std::vector<std::size_t>{3, 2});
    CHECK(pi0(cw).count == 1);
    InvarianceReport rep = compare_invariance(g, y, inj);
    CHECK_MESSAGE(rep.pass, rep.str());
}

TEST_CASE("lens subdivision of the filled square")
{
    GlobularComplex x = realize(gen_example("filled_square"));
    auto [y, inj] = subdivide_lens(x, "s");
    CHECK(y.states.size() == x.states.size() + 1);
    auto cy = y.cell_census();
    CHECK(cy[1] == 6); // two new spine edges
    CHECK(cy[2] == 2); // two halves
    CHECK(validate_complex(y).ok());
    InvarianceReport rep = compare_invariance(x, y, inj);
    CHECK_MESSAGE(rep.pass, rep.str());
}

TEST_CASE("lens subdivision rejects edges, missing chains, bad shapes")
{
    GlobularComplex x = realize(gen_example("filled_square"));
    CHECK_THROWS_AS((void)subdivide_lens(x, "a"), InputError);

    GlobularComplex stripped = x;
    for (auto& c : stripped.cells)
        if (c.id == "s")
            c.flow.reset();
    CHECK_THROWS_AS((void)subdivide_lens(stripped, "s"), InputError);

    GlobularComplex bad = x;
    for (auto& c : bad.cells)
        if (c.id == "s") {
            ChainSum three;
            three.add(1, {"a", "d"});
            three.add(-1, {"b", "c"});
            three.add(1, {"b", "c"}); // coefficient collapses to zero term set
            three.normalize();
            // rebuild with a +2 coefficient instead
            ChainSum twochain;
            twochain.add(2, {"a", "d"});
            twochain.add(-1, {"b", "c"});
            twochain.normalize();
            c.flow = twochain;
        }
    CHECK_THROWS_AS((void)subdivide_lens(bad, "s"), InputError);
}

TEST_CASE("lens on a square referenced by a 3-cube splits the incidence")
{
    GlobularComplex x = realize(gen_cube(3));
    // pick a square the cube's branch boundary touches
    const GlobularCell* cube = nullptr;
    for (const auto& c : x.cells)
        if (c.dim == 3)
            cube = &c;
    REQUIRE(cube);
    const std::string target = cube->branch.terms.begin()->first;
    const long long coef = cube->branch.terms.begin()->second;
    auto [y, inj] = subdivide_lens(x, target);
    CHECK(validate_complex(y).ok());
    const GlobularCell* cube2 = y.find(cube->id);
    REQUIRE(cube2);
    CHECK(cube2->branch.coef(target + ".-") == coef);
    CHECK(cube2->branch.coef(target + ".+") == coef);
    InvarianceReport rep = compare_invariance(x, y, inj);
    CHECK_MESSAGE(rep.pass, rep.str());
    CHECK(oracle_check(y).pass);
}

TEST_CASE("iterated lens keeps subdividing its own halves")
{
    GlobularComplex x = realize(gen_example("filled_square"));
    auto [y1, i1] = subdivide_lens(x, "s");
    auto [y2, i2] = subdivide_lens(y1, "s.-");
    (void)i1;
    (void)i2;
    CHECK(validate_complex(y2).ok());
    CHECK(compare_invariance(x, y2, identity_on(x)).pass);
    CHECK(oracle_check(y2).pass);
}

TEST_CASE("grid subdivision censuses")
{
    PrecubicalSet sq = subdivide_precubical(gen_example("filled_square"), {2, 2});
    CHECK(validate(sq).ok());
    CHECK(sq.census() == std::vector<std::size_t>{9, 12, 4});

    PrecubicalSet edge;
    edge.cubes = {{"p", "q"}, {"e"}};
    edge.faces.emplace("e", PrecubicalSet::FaceLists{{"p"}, {"q"}});
    PrecubicalSet sub = subdivide_precubical(edge, {3});
    CHECK(validate(sub).ok());
    CHECK(sub.census() == std::vector<std::size_t>{4, 3});

    // all-ones factors are the identity
    for (const auto& name : catalog_names())
        CHECK(subdivide_precubical(gen_example(name), {1, 1, 1}) == gen_example(name));
}

TEST_CASE("grid subdivision of the 3-cube")
{
    PrecubicalSet c = subdivide_precubical(gen_cube(3), {2, 2, 2});
    CHECK(validate(c).ok());
    // (m+1)^3 vertices, 3 m (m+1)^2 edges, 3 m^2 (m+1) squares, m^3 cubes
    CHECK(c.census() == std::vector<std::size_t>{27, 54, 36, 8});
    InvarianceReport rep =
        compare_invariance(realize(gen_cube(3)), realize(c), identity_on(realize(gen_cube(3))));
    CHECK_MESSAGE(rep.pass, rep.str());
}

TEST_CASE("grid subdivision keeps original vertex names")
{
    PrecubicalSet sq = subdivide_precubical(gen_example("filled_square"), {2, 2});
    auto dim = sq.dim_index();
    for (const char* v : {"v00", "v01", "v10", "v11"})
        CHECK(dim.at(v) == 0);
}

TEST_CASE("grid factors must agree across shared faces")
{
    CHECK_THROWS_AS((void)subdivide_precubical(gen_example("filled_square"), {2, 3}),
                    InputError);
    CHECK_THROWS_AS((void)subdivide_precubical(gen_example("filled_square"), {2}),
                    InputError);
    CHECK_THROWS_AS((void)subdivide_precubical(gen_example("filled_square"), {0, 0}),
                    InputError);
    // an edges-only complex may use any single factor
    PrecubicalSet w = subdivide_precubical(gen_example("wedge_two_edges"), {4});
    CHECK(validate(w).ok());
}

TEST_CASE("grid subdivision of the torus (loops onto one vertex)")
{
    PrecubicalSet t = subdivide_precubical(gen_example("torus"), {2, 2});
    CHECK(validate(t).ok());
    // the square splits into 4; each loop edge into 2; cut vertices appear
    CHECK(t.census() == std::vector<std::size_t>{1 + 2 + 1, 4 + 4, 4});
    InvarianceReport rep = compare_invariance(
        realize(gen_example("torus")), realize(t), identity_on(realize(gen_example("torus"))));
    CHECK_MESSAGE(rep.pass, rep.str());
}

TEST_CASE("hollow square with every edge subdivided keeps H1")
{
    PrecubicalSet k = gen_example("hollow_square");
    std::vector<SubdivisionOp> ops;
    for (const char* e : {"a", "b", "c", "d"}) {
        SubdivisionOp op;
        op.kind = SubdivisionOp::Kind::Edge;
        op.cell = e;
        op.k = 1 + (e[0] - 'a') % 3;
        ops.push_back(op);
    }
    InvarianceReport rep = check_invariance(k, ops);
    CHECK_MESSAGE(rep.pass, rep.str());
    REQUIRE(rep.branching.size() >= 2);
    CHECK(rep.branching[1].before == HomologyGroup{1, {}});
    CHECK(rep.branching[1].after == HomologyGroup{1, {}});
}

TEST_CASE("mixed pipeline: grid then lens then edge")
{
    std::vector<SubdivisionOp> ops;
    SubdivisionOp grid;
    grid.kind = SubdivisionOp::Kind::Grid;
    grid.factors = {2, 2};
    ops.push_back(grid);
    SubdivisionOp lens;
    lens.kind = SubdivisionOp::Kind::Lens;
    lens.cell = "s@0,0";
    ops.push_back(lens);
    SubdivisionOp edge;
    edge.kind = SubdivisionOp::Kind::Edge;
    edge.cell = "a@0";
    edge.k = 2;
    ops.push_back(edge);
    InvarianceReport rep = check_invariance(gen_example("filled_square"), ops);
    CHECK_MESSAGE(rep.pass, rep.str());
}

TEST_CASE("grid after a globular op is inapplicable and names the step")
{
    std::vector<SubdivisionOp> ops;
    SubdivisionOp edge;
    edge.kind = SubdivisionOp::Kind::Edge;
    edge.cell = "a";
    edge.k = 1;
    ops.push_back(edge);
    SubdivisionOp grid;
    grid.kind = SubdivisionOp::Kind::Grid;
    grid.factors = {2, 2};
    ops.push_back(grid);
    try {
        (void)check_invariance(gen_example("filled_square"), ops);
        FAIL("expected an error");
    } catch (const InputError& e) {
        CHECK(std::string(e.what()).find("op 2") != std::string::npos);
    }
}

TEST_CASE("a faulty operator that drops a boundary term is caught")
{
    GlobularComplex x = realize(gen_example("hollow_square"));
    auto [y, inj] = subdivide_edge(x, "a", 1);
    // sabotage: retarget the subdivided edge's source so the branching space
    // at v00 loses a point
    for (auto& c : y.cells)
        if (c.id == "a.1")
            c.src = "a.p1";
    for (auto& s : y.states)
        (void)s;
    InvarianceReport rep = compare_invariance(x, y, inj);
    CHECK_FALSE(rep.pass);
    bool located = false;
    for (const auto& r : rep.pi0_branching)
        if (!r.equal)
            located = true;
    for (const auto& r : rep.branching)
        if (!r.equal)
            located = true;
    CHECK(located);
}

TEST_CASE("op-sequence JSON parses and validates")
{
    json j = json::parse(R"([{"kind":"edge","cell":"e","k":2},
                             {"kind":"lens","cell":"s"},
                             {"kind":"grid","factors":[2,2]}])");
    auto ops = parse_ops(j);
    REQUIRE(ops.size() == 3);
    CHECK(ops[0].kind == SubdivisionOp::Kind::Edge);
    CHECK(ops[0].k == 2);
    CHECK(ops[1].kind == SubdivisionOp::Kind::Lens);
    CHECK(ops[2].factors == std::vector<int>{2, 2});
    CHECK_THROWS_AS((void)parse_ops(json::parse(R"([{"kind":"spin"}])")), InputError);
    CHECK_THROWS_AS((void)parse_ops(json::parse(R"([{"kind":"edge","cell":"e"}])")),
                    InputError);
}

TEST_CASE("invariance fuzz: random complexes, random op sequences")
{
    // smaller than the acceptance battery, same machinery
    FuzzOptions opt;
    opt.seed = 11;
    opt.count = 25;
    opt.max_cubes = 60;
    FuzzSummary sum = run_fuzz(opt);
    for (const auto& log : sum.failure_logs)
        MESSAGE(log);
    CHECK(sum.failures == 0);
}

TEST_CASE("fuzz is deterministic per seed")
{
    FuzzOptions opt;
    opt.seed = 77;
    opt.count = 6;
    opt.max_cubes = 40;
    FuzzSummary a = run_fuzz(opt);
    FuzzSummary b = run_fuzz(opt);
    CHECK(a.failures == b.failures);
    CHECK(a.failure_logs == b.failure_logs);
}
