#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "digerm/globular.hpp"

#include <random>

using namespace digerm;

namespace {

// Brute-force dd = 0 sweep, independent of validate_complex.
bool boundaries_square_to_zero(const GlobularComplex& x)
{
    auto idx = x.cell_index();
    for (const auto& c : x.cells) {
        if (c.dim < 3)
            continue;
        FormalSum bb, mm;
        for (const auto& [id, coef] : c.branch.terms)
            for (const auto& [id2, coef2] : idx.at(id)->branch.terms)
                bb.add(id2, coef * coef2);
        for (const auto& [id, coef] : c.merge.terms)
            for (const auto& [id2, coef2] : idx.at(id)->merge.terms)
                mm.add(id2, coef * coef2);
        if (!bb.empty() || !mm.empty())
            return false;
    }
    return true;
}

} // namespace

TEST_CASE("realize of a single edge")
{
    PrecubicalSet k;
    k.cubes = {{"p", "q"}, {"e"}};
    k.faces.emplace("e", PrecubicalSet::FaceLists{{"p"}, {"q"}});
    GlobularComplex x = realize(k);
    CHECK(x.states == std::vector<std::string>{"p", "q"});
    REQUIRE(x.cells.size() == 1);
    CHECK(x.cells[0].dim == 1);
    CHECK(x.cells[0].src == "p");
    CHECK(x.cells[0].tgt == "q");
    CHECK(x.cells[0].branch.empty());
    CHECK(x.cells[0].merge.empty());
    CHECK_FALSE(x.cells[0].flow.has_value());
}

TEST_CASE("realize of the filled square pins the boundary signs")
{
    GlobularComplex x = realize(gen_example("filled_square"));
    CHECK(x.cell_census() == std::vector<std::size_t>{4, 4, 1});
    const GlobularCell* s = x.find("s");
    REQUIRE(s);
    CHECK(s->src == "v00");
    CHECK(s->tgt == "v11");
    CHECK(s->branch.coef("a") == 1);  // d0_1
    CHECK(s->branch.coef("b") == -1); // d0_2
    CHECK(s->merge.coef("c") == 1);   // d1_1
    CHECK(s->merge.coef("d") == -1);  // d1_2
    REQUIRE(s->flow.has_value());
    ChainSum expected;
    expected.add(1, {"a", "d"});
    expected.add(-1, {"b", "c"});
    expected.normalize();
    CHECK(*s->flow == expected);
    CHECK(validate_complex(x).ok());
}

TEST_CASE("realize of the 3-cube: census and dd = 0 by brute force")
{
    GlobularComplex x = realize(gen_cube(3));
    CHECK(x.cell_census() == std::vector<std::size_t>{8, 12, 6, 1});
    CHECK(boundaries_square_to_zero(x));
    CHECK(validate_complex(x).ok());
}

TEST_CASE("realize stays valid in dimensions four and five")
{
    for (int n : {4, 5}) {
        GlobularComplex x = realize(gen_cube(n));
        CHECK(boundaries_square_to_zero(x));
        CHECK(validate_complex(x).ok());
    }
}

TEST_CASE("realize preserves censuses on the catalog")
{
    for (const auto& name : catalog_names()) {
        PrecubicalSet k = gen_example(name);
        GlobularComplex x = realize(k);
        auto kc = k.census();
        auto xc = x.cell_census();
        REQUIRE(kc.size() == xc.size());
        for (std::size_t n = 0; n < kc.size(); ++n)
            CHECK(kc[n] == xc[n]);
        CHECK(validate_complex(x).ok());
    }
}

TEST_CASE("dd = 0 on fuzzed realizations")
{
    std::mt19937_64 rng(2718);
    for (int i = 0; i < 500; ++i) {
        GlobularComplex x = realize(random_precubical(rng));
        CHECK(boundaries_square_to_zero(x));
    }
}

TEST_CASE("branch summands share the source, merge summands the target")
{
    std::mt19937_64 rng(31);
    for (int i = 0; i < 100; ++i) {
        GlobularComplex x = realize(random_precubical(rng));
        auto idx = x.cell_index();
        for (const auto& c : x.cells) {
            for (const auto& [id, coef] : c.branch.terms) {
                (void)coef;
                CHECK(idx.at(id)->src == c.src);
            }
            for (const auto& [id, coef] : c.merge.terms) {
                (void)coef;
                CHECK(idx.at(id)->tgt == c.tgt);
            }
        }
    }
}

TEST_CASE("globe censuses")
{
    CHECK_THROWS_AS((void)globe(-2), InputError);
    CHECK(globe(0).cell_census() == std::vector<std::size_t>{2, 1});
    CHECK(globe(1).cell_census() == std::vector<std::size_t>{2, 2, 1});
    CHECK(globe(2).cell_census() == std::vector<std::size_t>{2, 2, 2, 1});
    CHECK(globe(4).cell_census() == std::vector<std::size_t>{2, 2, 2, 2, 2, 1});
}

TEST_CASE("globe(1) top cell boundary is the difference of the hemispheres")
{
    GlobularComplex g = globe(1);
    const GlobularCell* t = g.find("top");
    REQUIRE(t);
    CHECK(t->branch.coef("e1+") == 1);
    CHECK(t->branch.coef("e1-") == -1);
    CHECK(t->merge == t->branch);
}

TEST_CASE("globe(n) passes validate_complex for n <= 6")
{
    for (int n = 0; n <= 6; ++n) {
        GlobularComplex g = globe(n);
        ValidationReport rep = validate_complex(g);
        CHECK_MESSAGE(rep.ok(), "globe(", n, "): ", rep.str());
        CHECK(boundaries_square_to_zero(g));
    }
}

TEST_CASE("op is an involution on the nose")
{
    for (const auto& name : catalog_names())
        CHECK(op(op(realize(gen_example(name)))) == realize(gen_example(name)));
    for (int n = 0; n <= 4; ++n)
        CHECK(op(op(globe(n))) == globe(n));
}

TEST_CASE("op swaps endpoints and the two incidence records")
{
    PrecubicalSet k;
    k.cubes = {{"p", "q"}, {"e"}};
    k.faces.emplace("e", PrecubicalSet::FaceLists{{"p"}, {"q"}});
    GlobularComplex rev = op(realize(k));
    CHECK(rev.cells[0].src == "q");
    CHECK(rev.cells[0].tgt == "p");

    GlobularComplex sq = op(realize(gen_example("filled_square")));
    const GlobularCell* s = sq.find("s");
    REQUIRE(s);
    // the reversed square branches along the former back faces
    CHECK(s->branch.coef("c") == 1);
    CHECK(s->branch.coef("d") == -1);
    CHECK(s->merge.coef("a") == 1);
    CHECK(s->merge.coef("b") == -1);
    // chains run backwards
    ChainSum expected;
    expected.add(1, {"d", "a"});
    expected.add(-1, {"c", "b"});
    expected.normalize();
    REQUIRE(s->flow.has_value());
    CHECK(*s->flow == expected);
    CHECK(validate_complex(sq).ok());
}

TEST_CASE("validate_complex flags a wrong-source branch summand")
{
    GlobularComplex x = realize(gen_example("filled_square"));
    // "c" starts at v10, the square starts at v00
    GlobularCell* s = nullptr;
    for (auto& c : x.cells)
        if (c.id == "s")
            s = &c;
    REQUIRE(s);
    s->branch.add("a", -1);
    s->branch.add("c", 1);
    ValidationReport rep = validate_complex(x);
    CHECK_FALSE(rep.ok());
    CHECK(rep.contains("src-mismatch", "s"));
}

TEST_CASE("validate_complex flags bad attachment order and grading")
{
    GlobularComplex x;
    x.states = {"0", "1"};
    GlobularCell late;
    late.id = "late";
    late.dim = 2;
    late.src = "0";
    late.tgt = "1";
    late.branch.add("early", 1);
    GlobularCell early;
    early.id = "early";
    early.dim = 1;
    early.src = "0";
    early.tgt = "1";
    x.cells = {late, early};
    CHECK(validate_complex(x).contains("attachment-order", "late"));

    GlobularComplex y;
    y.states = {"0", "1"};
    GlobularCell e = early;
    GlobularCell wrong;
    wrong.id = "wrong";
    wrong.dim = 3;
    wrong.src = "0";
    wrong.tgt = "1";
    wrong.branch.add("early", 1); // dimension 1, expected 2
    y.cells = {e, wrong};
    CHECK(validate_complex(y).contains("bad-grading", "wrong"));
}

TEST_CASE("validate_complex flags inconsistent attaching chains")
{
    GlobularComplex g = globe(1);
    for (auto& c : g.cells)
        if (c.id == "top") {
            ChainSum bad;
            bad.add(1, {"e1+"});
            bad.add(1, {"e1-"}); // sign disagrees with the stored boundary
            bad.normalize();
            c.flow = bad;
        }
    ValidationReport rep = validate_complex(g);
    CHECK(rep.contains("flow-branch-mismatch", "top"));
}

TEST_CASE("validate_complex flags non-composable chains and bad endpoints")
{
    GlobularComplex x = realize(gen_example("filled_square"));
    for (auto& c : x.cells)
        if (c.id == "s") {
            ChainSum bad;
            bad.add(1, {"a", "c"}); // tgt(a) = v01 but src(c) = v10
            bad.add(-1, {"b", "c"});
            bad.normalize();
            c.flow = bad;
        }
    ValidationReport rep = validate_complex(x);
    CHECK(rep.contains("chain-composition", "s"));
}

TEST_CASE("partial flow data within one dimension is flagged")
{
    GlobularComplex x = realize(gen_cube(3));
    // strip the chains from one square only
    for (auto& c : x.cells)
        if (c.dim == 2) {
            c.flow.reset();
            break;
        }
    ValidationReport rep = validate_complex(x);
    CHECK(rep.contains("flow-partial", "2"));
}

TEST_CASE("globular JSON round-trip")
{
    for (const auto& name : catalog_names()) {
        GlobularComplex x = realize(gen_example(name));
        CHECK(parse_globular(emit_json(x)) == x);
    }
    for (int n = 0; n <= 4; ++n)
        CHECK(parse_globular(emit_json(globe(n))) == globe(n));
    std::mt19937_64 rng(5);
    for (int i = 0; i < 30; ++i) {
        GlobularComplex x = realize(random_precubical(rng));
        CHECK(parse_globular(emit_json(x)) == x);
    }
}

TEST_CASE("globular JSON rejects unknown keys")
{
    json j = emit_json(globe(1));
    j["cells"][0]["custom"] = true;
    CHECK_THROWS_AS((void)parse_globular(j), InputError);
}
