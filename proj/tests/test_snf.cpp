#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "digerm/snf.hpp"

#include <random>

using namespace digerm;

namespace {

Mat from_rows(const std::vector<std::vector<long long>>& rows)
{
    Mat m(rows.size(), rows.empty() ? 0 : rows[0].size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < rows[i].size(); ++j)
            m(i, j) = rows[i][j];
    return m;
}

Mat random_matrix(std::mt19937_64& rng, std::size_t maxdim, long long maxabs)
{
    const std::size_t r = rng() % maxdim + 1;
    const std::size_t c = rng() % maxdim + 1;
    Mat m(r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j)
            m(i, j) = static_cast<long long>(rng() % (2 * maxabs + 1)) - maxabs;
    return m;
}

} // namespace

TEST_CASE("zero matrix stays zero")
{
    Mat a(3, 2);
    SNFResult r = snf(a);
    CHECK(r.d == a);
    CHECK(r.rank() == 0);
    CHECK(snf_postconditions_hold(a, r));
}

TEST_CASE("identity is already in normal form")
{
    Mat a = Mat::identity(4);
    SNFResult r = snf(a);
    CHECK(r.d == a);
    CHECK(r.rank() == 4);
    CHECK(snf_postconditions_hold(a, r));
}

TEST_CASE("invariant factors of [[2,4],[6,8]] are 2 and 4")
{
    Mat a = from_rows({{2, 4}, {6, 8}});
    SNFResult r = snf(a);
    REQUIRE(r.d.rows() == 2);
    CHECK(r.d(0, 0) == 2);
    CHECK(r.d(1, 1) == 4);
    CHECK(r.d(0, 1) == 0);
    CHECK(r.d(1, 0) == 0);
    CHECK(snf_postconditions_hold(a, r));
}

TEST_CASE("diagonal is a nonnegative divisibility chain")
{
    Mat a = from_rows({{6, 10}, {15, 4}, {0, -9}});
    SNFResult r = snf(a);
    CHECK(snf_postconditions_hold(a, r));
    auto diag = r.diagonal();
    REQUIRE(diag.size() == 2);
    // gcd of entries is 1; gcd of the three 2x2 minors (-126, -54, -135) is 9
    CHECK(diag[0] == 1);
    CHECK(diag[1] == 9);
}

TEST_CASE("deterministic for a fixed input")
{
    std::mt19937_64 rng(7);
    for (int rep = 0; rep < 20; ++rep) {
        Mat a = random_matrix(rng, 8, 9);
        SNFResult r1 = snf(a);
        SNFResult r2 = snf(a);
        CHECK(r1.d == r2.d);
        CHECK(r1.u == r2.u);
        CHECK(r1.v == r2.v);
    }
}

TEST_CASE("postconditions on random matrices")
{
    std::mt19937_64 rng(42);
    for (int rep = 0; rep < 250; ++rep) {
        Mat a = random_matrix(rng, 12, 9);
        SNFResult r = snf(a);
        CHECK(snf_postconditions_hold(a, r));
    }
}

TEST_CASE("postconditions survive larger sizes where unimodularity is checked by reduction")
{
    std::mt19937_64 rng(1234);
    for (int rep = 0; rep < 10; ++rep) {
        Mat a = random_matrix(rng, 25, 9);
        SNFResult r = snf(a);
        CHECK(snf_postconditions_hold(a, r, 12));
    }
}

TEST_CASE("bareiss determinant on known values")
{
    CHECK(determinant(from_rows({{2, 4}, {6, 8}})) == -8);
    CHECK(determinant(from_rows({{1, 2, 3}, {4, 5, 6}, {7, 8, 10}})) == -3);
    CHECK(determinant(Mat::identity(5)) == 1);
    CHECK(determinant(from_rows({{0, 1}, {1, 0}})) == -1);
    CHECK(determinant(from_rows({{0, 0}, {0, 0}})) == 0);
}
