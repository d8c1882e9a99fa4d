#include <doctest.h>

#include "lr/bspline.hpp"
#include "lr/scenarios.hpp"

#include <random>

using namespace lr;

namespace {

Rational rat(const char* s) { return Rational::fromString(s); }

KnotVector kv(std::initializer_list<const char*> vals) {
    std::vector<Rational> t;
    for (const char* v : vals) t.push_back(rat(v));
    return KnotVector(std::move(t));
}

Rational power(const Rational& base, int e) {
    Rational r(1);
    for (int i = 0; i < e; ++i) r *= base;
    return r;
}

// Independent evaluation oracle for distinct knots: B[t](x) equals
// (t_last - t_first) times the divided difference of s -> (s-x)_+^p over the
// knots, with (u)_+^p = u^p for u > 0 and 0 otherwise. This takes a different
// route than the recurrence used by the implementation.
Rational truncatedPower(const Rational& s, const Rational& x, int p) {
    Rational u = s - x;
    if (u.sign() <= 0) return Rational(0);
    return power(u, p);
}

Rational dividedDifference(const std::vector<Rational>& t, std::size_t i, std::size_t j, const Rational& x, int p) {
    if (i == j) return truncatedPower(t[i], x, p);
    return (dividedDifference(t, i + 1, j, x, p) - dividedDifference(t, i, j - 1, x, p)) / (t[j] - t[i]);
}

Rational oracleEval(const KnotVector& knots, int p, const Rational& x) {
    return (knots.back() - knots.front()) * dividedDifference(knots.t, 0, knots.size() - 1, x, p);
}

std::vector<Rational> samplePoints(const Rational& lo, const Rational& hi, int n, std::mt19937_64& rng) {
    std::vector<Rational> pts;
    for (int i = 0; i < n; ++i) {
        int den = std::uniform_int_distribution<int>(5, 89)(rng);
        int num = std::uniform_int_distribution<int>(0, den)(rng);
        pts.push_back(lo + (hi - lo) * Rational(num, den));
    }
    return pts;
}

}  // namespace

TEST_CASE("univariate evaluation against the divided-difference oracle") {
    std::mt19937_64 rng(7);
    const std::vector<std::pair<KnotVector, int>> cases = {
        {kv({"0", "1", "2"}), 1},
        {kv({"0", "1", "2", "3"}), 2},
        {kv({"0", "1/3", "1/2", "3"}), 2},
        {kv({"-1", "0", "5/2", "3", "4"}), 3},
        {kv({"0", "1"}), 0},
    };
    for (const auto& [knots, p] : cases) {
        for (const Rational& x : samplePoints(knots.front() - Rational(1, 7), knots.back() + Rational(1, 7), 25, rng))
            CHECK(evalUnivariate(knots, p, x) == oracleEval(knots, p, x));
        // knot values themselves exercise the half-open convention
        for (const Rational& x : knots.t) CHECK(evalUnivariate(knots, p, x) == oracleEval(knots, p, x));
    }
}

TEST_CASE("univariate B-splines vanish outside and are positive inside the support") {
    std::mt19937_64 rng(23);
    const std::vector<std::pair<KnotVector, int>> cases = {
        {kv({"0", "1", "2"}), 1},      {kv({"0", "1", "2", "3"}), 2}, {kv({"0", "0", "1", "2"}), 2},
        {kv({"0", "1", "1", "2"}), 2}, {kv({"0", "1"}), 0},           {kv({"-1", "0", "5/2", "3", "4"}), 3},
    };
    for (const auto& [knots, p] : cases) {
        CHECK(evalUnivariate(knots, p, knots.front() - Rational(1, 3)) == Rational(0));
        CHECK(evalUnivariate(knots, p, knots.back() + Rational(1, 3)) == Rational(0));
        CHECK(evalUnivariate(knots, p, knots.back()) == Rational(0));
        for (const Rational& x : samplePoints(knots.front(), knots.back(), 15, rng)) {
            if (!(knots.front() < x && x < knots.back())) continue;
            CHECK(evalUnivariate(knots, p, x) > Rational(0));
        }
    }
}

TEST_CASE("univariate evaluation: frozen values") {
    CHECK(evalUnivariate(kv({"0", "1", "2"}), 1, rat("1")) == Rational(1));  // hat peak
    CHECK(evalUnivariate(kv({"0", "1", "2", "3"}), 2, rat("3/2")) == rat("3/4"));
    CHECK(evalUnivariate(kv({"0", "0", "1", "2"}), 2, rat("0")) == Rational(0));
    // hand-expanded pieces of B[(0,0,1,2)]: x(1-x) + x(2-x)/2 on [0,1), (2-x)^2/2 on [1,2)
    CHECK(evalUnivariate(kv({"0", "0", "1", "2"}), 2, rat("1/2")) == rat("5/8"));
    CHECK(evalUnivariate(kv({"0", "0", "1", "2"}), 2, rat("3/2")) == rat("1/8"));
    // value jumps only for multiplicity 3
    CHECK(evalUnivariate(kv({"0", "0", "0", "1"}), 2, rat("0")) == Rational(1));
    CHECK(evalUnivariate(kv({"0", "1", "2", "3"}), 2, rat("3")) == Rational(0));
    CHECK_THROWS_AS(evalUnivariate(kv({"0", "1", "2"}), 2, rat("1")), Error);  // BadKnotCount
}

TEST_CASE("left-limit evaluation closes the last element") {
    CHECK(evalUnivariateLeftLimit(kv({"0", "1", "1", "1"}), 2, rat("1")) == Rational(1));
    CHECK(evalUnivariateLeftLimit(kv({"0", "1", "2", "3"}), 2, rat("3")) == Rational(0));
    CHECK(evalUnivariateLeftLimit(kv({"0", "1", "2"}), 1, rat("2")) == Rational(0));
    CHECK(evalUnivariateLeftLimit(kv({"0", "1"}), 0, rat("1")) == Rational(1));
    // away from the right end it is the plain value for continuous points
    CHECK(evalUnivariateLeftLimit(kv({"0", "1", "2"}), 1, rat("1")) == Rational(1));
}

TEST_CASE("knot insertion") {
    SUBCASE("frozen example") {
        KnotInsertion ins = insertKnot(kv({"0", "1", "2", "3"}), 2, rat("3/2"));
        CHECK(ins.left == kv({"0", "1", "3/2", "2"}));
        CHECK(ins.right == kv({"1", "3/2", "2", "3"}));
        CHECK(ins.alpha1 == rat("3/4"));
        CHECK(ins.alpha2 == rat("3/4"));
    }
    SUBCASE("pointwise identity at random rational points") {
        std::mt19937_64 rng(11);
        const std::vector<std::pair<KnotVector, int>> cases = {
            {kv({"0", "1", "2", "3"}), 2}, {kv({"0", "0", "1", "3"}), 2}, {kv({"0", "2", "5"}), 1},
            {kv({"0", "1", "1", "2", "3"}), 3},
        };
        for (const auto& [knots, p] : cases) {
            for (const Rational& tHat :
                 samplePoints(knots.front() + Rational(1, 13), knots.back() - Rational(1, 13), 4, rng)) {
                if (!(knots.front() < tHat && tHat < knots.back())) continue;
                KnotInsertion ins = insertKnot(knots, p, tHat);
                CHECK(ins.alpha1 > Rational(0));
                CHECK(ins.alpha1 <= Rational(1));
                CHECK(ins.alpha2 > Rational(0));
                CHECK(ins.alpha2 <= Rational(1));
                for (const Rational& x : samplePoints(knots.front(), knots.back(), 20, rng)) {
                    Rational lhs = evalUnivariate(knots, p, x);
                    Rational rhs =
                        ins.alpha1 * evalUnivariate(ins.left, p, x) + ins.alpha2 * evalUnivariate(ins.right, p, x);
                    CHECK(lhs == rhs);
                }
            }
        }
    }
    SUBCASE("repeated interior knot is allowed up to p+1") {
        KnotInsertion ins = insertKnot(kv({"0", "1", "2", "3"}), 2, rat("1"));
        CHECK(ins.left == kv({"0", "1", "1", "2"}));
    }
    SUBCASE("symmetric knot vector gives equal alphas") {
        KnotInsertion ins = insertKnot(kv({"0", "1", "3", "4"}), 2, rat("2"));
        CHECK(ins.alpha1 == ins.alpha2);
    }
    SUBCASE("insertion outside the interior fails") {
        CHECK_THROWS_AS(insertKnot(kv({"0", "1", "2", "3"}), 2, rat("0")), Error);
        CHECK_THROWS_AS(insertKnot(kv({"0", "1", "2", "3"}), 2, rat("4")), Error);
    }
}

TEST_CASE("tensor evaluation") {
    TensorBSpline hat(Degree{1, 1}, kv({"0", "1", "2"}), kv({"0", "1", "2"}));
    CHECK(evalTensor(hat, rat("1"), rat("1")) == Rational(1));
    CHECK(evalTensor(hat, rat("5"), rat("1")) == Rational(0));
    TensorBSpline b(Degree{2, 2}, kv({"0", "1", "2", "3"}), kv({"0", "1", "2", "3"}));
    CHECK(evalTensor(b, rat("3/2"), rat("3/2")) == rat("9/16"));
    TensorBSpline weighted(Degree{1, 1}, kv({"0", "1", "2"}), kv({"0", "1", "2"}), rat("2/3"));
    CHECK(evalTensor(weighted, rat("1"), rat("1")) == rat("2/3"));
}

TEST_CASE("splits of a tensor B-spline") {
    TensorBSpline b(Degree{2, 2}, kv({"0", "1", "2", "3"}), kv({"0", "1", "2", "3"}));
    std::vector<SplitSpec> ss = splitsOf(b);
    int v = 0, h = 0;
    for (const SplitSpec& s : ss) {
        CHECK(s.mult == 1);
        if (s.axis == Axis::Vertical) {
            ++v;
            CHECK(s.span == Interval{rat("0"), rat("3")});
        } else {
            ++h;
        }
    }
    CHECK(v == 4);
    CHECK(h == 4);

    TensorBSpline c(Degree{2, 2}, kv({"0", "0", "1", "2"}), kv({"0", "1", "2", "3"}));
    bool sawDouble = false;
    for (const SplitSpec& s : splitsOf(c))
        if (s.axis == Axis::Vertical && s.fixed == rat("0")) {
            CHECK(s.mult == 2);
            sawDouble = true;
        }
    CHECK(sawDouble);
}

TEST_CASE("support status against scenario meshes") {
    LRMesh m = builtinScenario("fig7a");
    SUBCASE("fig6-style minimal and non-minimal supports") {
        // A legitimate LR member: minimal.
        TensorBSpline good(Degree{2, 2}, kv({"1/4", "1/2", "7/12", "3/4"}), kv({"0", "1/3", "11/20", "2/3"}));
        CHECK(supportStatus(good, m).kind == SupportStatusKind::MinimalSupport);
        // Ignoring the traversing vertical split at 7/12: not minimal, witness vertical.
        TensorBSpline bad(Degree{2, 2}, kv({"1/4", "1/2", "11/20", "3/4"}), kv({"0", "1/3", "11/20", "2/3"}));
        SupportStatus st = supportStatus(bad, m);
        // 11/20 is no vertical line at all: support containment already fails.
        CHECK(st.kind == SupportStatusKind::NoSupport);
        TensorBSpline notMinimal(Degree{2, 2}, kv({"0", "1/4", "1/2", "3/4"}), kv({"0", "1/3", "2/3", "1"}));
        SupportStatus st2 = supportStatus(notMinimal, m);
        CHECK(st2.kind == SupportStatusKind::SupportNotMinimal);
        REQUIRE(st2.witness.has_value());
        CHECK(st2.witness->axis == Axis::Horizontal);  // y = 11/20 traverses [0,3/4]x[0,1]
    }
    SUBCASE("support wider than the domain") {
        TensorBSpline wide(Degree{2, 2}, kv({"-1", "0", "1", "2"}), kv({"0", "1/3", "2/3", "1"}));
        CHECK(supportStatus(wide, m).kind == SupportStatusKind::NoSupport);
    }
    SUBCASE("tensor-mesh windows have minimal support") {
        LRMesh t = newTensorMesh({{Rational(0), 1}, {Rational(1), 1}, {Rational(2), 1}, {Rational(3), 1}},
                                 {{Rational(0), 1}, {Rational(1), 1}, {Rational(2), 1}, {Rational(3), 1}},
                                 Degree{2, 2});
        TensorBSpline b(Degree{2, 2}, kv({"0", "1", "2", "3"}), kv({"0", "1", "2", "3"}));
        CHECK(supportStatus(b, t).kind == SupportStatusKind::MinimalSupport);
    }
    SUBCASE("multiplicity-starved knot is not minimal") {
        LRMesh t = newTensorMesh({{Rational(0), 1}, {Rational(1), 2}, {Rational(2), 1}, {Rational(3), 1}},
                                 {{Rational(0), 1}, {Rational(1), 1}, {Rational(2), 1}, {Rational(3), 1}},
                                 Degree{2, 2});
        TensorBSpline b(Degree{2, 2}, kv({"0", "1", "2", "3"}), kv({"0", "1", "2", "3"}));
        SupportStatus st = supportStatus(b, t);
        CHECK(st.kind == SupportStatusKind::SupportNotMinimal);
        REQUIRE(st.witness.has_value());
        CHECK(st.witness->mult == 2);
    }
}

TEST_CASE("stacked members share the restriction to a traversing split") {
    // Two members over the same vertical window, shifted one band vertically:
    // their restrictions to a horizontal split through both are identical.
    TensorBSpline lower(Degree{2, 2}, kv({"1/4", "1/3", "5/12", "1/2"}), kv({"1/4", "5/16", "3/8", "7/16"}));
    TensorBSpline upper(Degree{2, 2}, kv({"1/4", "1/3", "5/12", "1/2"}), kv({"5/16", "3/8", "7/16", "1/2"}));
    SplitSpec gamma{Axis::Horizontal, kv({"3/8"}).front(), Interval{kv({"-1/4"}).front(), kv({"1/2"}).front()}, 1};
    CHECK(restrictionToSplit(lower, gamma).first == restrictionToSplit(upper, gamma).first);
}

TEST_CASE("restriction to a split") {
    TensorBSpline b(Degree{2, 2}, kv({"0", "1", "2", "3"}), kv({"0", "1", "2", "4"}));
    SplitSpec h{Axis::Horizontal, rat("3/2"), Interval{rat("-1"), rat("5")}, 1};
    auto [kx, px] = restrictionToSplit(b, h);
    CHECK(kx == b.x);
    CHECK(px == 2);
    SplitSpec v{Axis::Vertical, rat("3/2"), Interval{rat("0"), rat("4")}, 1};
    auto [ky, py] = restrictionToSplit(b, v);
    CHECK(ky == b.y);
    CHECK(py == 2);
    SplitSpec touching{Axis::Vertical, rat("0"), Interval{rat("0"), rat("4")}, 1};
    CHECK_THROWS_AS(restrictionToSplit(b, touching), Error);
}

TEST_CASE("Bernstein coefficients on elements") {
    SUBCASE("disjoint element gives the zero matrix") {
        TensorBSpline b(Degree{1, 1}, kv({"0", "1", "2"}), kv({"0", "1", "2"}));
        RatMatrix m = bernsteinOnElement(b, Element{Rect{{rat("5"), rat("6")}, {rat("0"), rat("1")}}});
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) CHECK(m(i, j) == Rational(0));
    }
    SUBCASE("bilinear corner value (corner-evaluation oracle)") {
        TensorBSpline b(Degree{1, 1}, kv({"0", "1", "2"}), kv({"0", "1", "2"}));
        RatMatrix m = bernsteinOnElement(b, Element{Rect{{rat("0"), rat("1")}, {rat("0"), rat("1")}}});
        CHECK(m(0, 0) == Rational(0));
        CHECK(m(0, 1) == Rational(0));
        CHECK(m(1, 0) == Rational(0));
        CHECK(m(1, 1) == Rational(1));
        // Degree-1 Bernstein coefficients are the corner values.
        CHECK(m(0, 0) == evalTensor(b, rat("0"), rat("0")));
        CHECK(m(1, 1) == evalTensorInDomain(b, rat("1"), rat("1"), Rect{{rat("0"), rat("1")}, {rat("0"), rat("1")}}));
    }
    SUBCASE("full tensor basis sums to all-ones in Bernstein coordinates") {
        // Partition-of-unity oracle: the weighted sum of all B-splines on an open
        // knot vector is one, so the summed Bernstein matrices must be all ones.
        std::vector<Rational> flatX{rat("0"), rat("0"), rat("0"), rat("1"), rat("2"), rat("3"), rat("3"), rat("3")};
        std::vector<Rational> flatY = flatX;
        Element el{Rect{{rat("1"), rat("2")}, {rat("1"), rat("2")}}};
        RatMatrix sum = RatMatrix::Constant(3, 3, Rational(0));
        for (std::size_t i = 0; i + 3 < flatX.size(); ++i) {
            for (std::size_t j = 0; j + 3 < flatY.size(); ++j) {
                KnotVector xw(std::vector<Rational>(flatX.begin() + i, flatX.begin() + i + 4));
                KnotVector yw(std::vector<Rational>(flatY.begin() + j, flatY.begin() + j + 4));
                if (!(xw.front() < xw.back()) || !(yw.front() < yw.back())) continue;
                TensorBSpline b(Degree{2, 2}, xw, yw);
                if (!b.support().overlapsInterior(el.rect)) continue;
                sum += bernsteinOnElement(b, el);
            }
        }
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) CHECK(sum(i, j) == Rational(1));
    }
    SUBCASE("straddling element is rejected") {
        TensorBSpline b(Degree{1, 1}, kv({"0", "1", "2"}), kv({"0", "1", "2"}));
        CHECK_THROWS_AS(bernsteinOnElement(b, Element{Rect{{rat("1/2"), rat("3/2")}, {rat("0"), rat("1")}}}), Error);
    }
}

TEST_CASE("support status is monotone under refinement") {
    LRMesh m = builtinScenario("fig7a");
    LRMesh refined = insertSplit(m, SplitSpec{Axis::Vertical, rat("1/8"), Interval{rat("0"), rat("1")}, 1});
    TensorBSpline b(Degree{2, 2}, kv({"1/4", "1/2", "7/12", "3/4"}), kv({"0", "1/3", "11/20", "2/3"}));
    REQUIRE(supportStatus(b, m).kind == SupportStatusKind::MinimalSupport);
    CHECK(supportStatus(b, refined).kind != SupportStatusKind::NoSupport);
}
