#include "lr/fuzz.hpp"

#include "lr/dependence.hpp"

#include <algorithm>
#include <future>
#include <sstream>
#include <thread>

namespace lr {

namespace {

std::vector<Rational> lineFixeds(const LRMesh& mesh, Axis a) {
    std::vector<Rational> out;
    for (const auto& [fixed, parts] : mesh.lines(a)) {
        (void)parts;
        out.push_back(fixed);
    }
    return out;
}

/// One random insertion attempt; 1-multiplicity, fresh line or extension, never
/// overlapping existing colinear meshlines. Returns false when the draw was illegal.
bool tryRandomInsertion(std::mt19937_64& rng, LRMesh& mesh) {
    const Axis a = std::uniform_int_distribution<int>(0, 1)(rng) == 0 ? Axis::Vertical : Axis::Horizontal;
    const Axis o = orthogonal(a);

    std::vector<Rational> same = lineFixeds(mesh, a);
    std::vector<Rational> orth = lineFixeds(mesh, o);
    if (same.size() < 2 || orth.size() < 2) return false;

    Rational fixed;
    if (std::uniform_int_distribution<int>(0, 2)(rng) != 0) {
        // Fresh line between two adjacent existing ones.
        std::size_t i = std::uniform_int_distribution<std::size_t>(0, same.size() - 2)(rng);
        fixed = midpoint(same[i], same[i + 1]);
    } else {
        // Reuse an existing line (possible extension or second split on it).
        fixed = same[std::uniform_int_distribution<std::size_t>(0, same.size() - 1)(rng)];
    }

    std::size_t i = std::uniform_int_distribution<std::size_t>(0, orth.size() - 2)(rng);
    std::size_t j = std::uniform_int_distribution<std::size_t>(i + 1, orth.size() - 1)(rng);
    SplitSpec split{a, fixed, Interval{orth[i], orth[j]}, 1};

    // Reject overlaps with existing colinear meshlines (multiplicity bumps are
    // exercised by dedicated unit tests, not by the randomized suite).
    if (auto it = mesh.lines(a).find(fixed); it != mesh.lines(a).end())
        for (const auto& part : it->second)
            if (part.span.overlapsInterior(split.span)) return false;

    LRMesh next;
    try {
        next = insertSplit(mesh, split);
    } catch (const Error&) {
        return false;
    }
    // LR-rule 2 on the affected line's maximal splits (other splits only lengthen).
    const int need = mesh.degree().along(a) + 2;
    for (const SplitSpec& ms : maximalSplits(next, a)) {
        if (!(ms.fixed == fixed)) continue;
        if (knotVectorOnSplit(next, ms).length < need) return false;
    }
    mesh = next;
    return true;
}

Rational randomPointIn(std::mt19937_64& rng, const Interval& range) {
    const int den = std::uniform_int_distribution<int>(7, 97)(rng);
    const int num = std::uniform_int_distribution<int>(0, den)(rng);
    return range.lo + range.length() * Rational(num, den);
}

struct HistoryResult {
    long long insertions = 0;
    bool msDependent = false;
    bool lrDependent = false;
    std::vector<std::string> failures;
};

HistoryResult runHistory(std::uint64_t seed, const FuzzOptions& opt) {
    HistoryResult res;
    std::mt19937_64 rng(seed);
    auto fail = [&](const std::string& what) {
        std::ostringstream os;
        os << "[degree (" << opt.degree.p1 << "," << opt.degree.p2 << ") seed " << seed << "] " << what;
        res.failures.push_back(os.str());
    };

    try {
        const int p1 = opt.degree.p1, p2 = opt.degree.p2;
        const int nx = std::uniform_int_distribution<int>(2, 4)(rng);
        const int ny = std::uniform_int_distribution<int>(2, 4)(rng);
        LRMesh::KnotList xk, yk;
        xk.emplace_back(Rational(0), p1 + 1);
        for (int i = 1; i <= nx; ++i) xk.emplace_back(Rational(i), 1);
        xk.emplace_back(Rational(nx + 1), p1 + 1);
        yk.emplace_back(Rational(0), p2 + 1);
        for (int i = 1; i <= ny; ++i) yk.emplace_back(Rational(i), 1);
        yk.emplace_back(Rational(ny + 1), p2 + 1);
        LRMesh mesh = newTensorMesh(xk, yk, opt.degree);

        int done = 0, attempts = 0;
        int dim = dimLrUnchecked(mesh);
        while (done < opt.insertionsPerHistory && attempts < 60) {
            ++attempts;
            LRMesh beforeMesh = mesh;
            if (!tryRandomInsertion(rng, mesh)) continue;
            ++done;
            ++res.insertions;
            const SplitSpec& split = mesh.history().back();
            int r = dimIncrement(beforeMesh, split);
            int dimAfter = dimLrUnchecked(mesh);
            if (dimAfter != dim + r) {
                std::ostringstream os;
                os << "dimension increment mismatch at step " << done << ": dim " << dim << " -> " << dimAfter
                   << " but r = " << r << " (" << axisName(split.axis) << " " << split.fixed << " ["
                   << split.span.lo << ", " << split.span.hi << "])";
                fail(os.str());
            }
            dim = dimAfter;
        }
        if (!validateLrRules(mesh).empty()) fail("generator produced an LR-rule-violating mesh");

        if (!opt.checkCollections) return res;

        SplineCollection lr = deriveLr(mesh);
        for (int k = 0; k < 30; ++k) {
            Rational x = randomPointIn(rng, mesh.domain().x);
            Rational y = randomPointIn(rng, mesh.domain().y);
            if (!(collectionValueAt(lr, x, y) == Rational(1))) {
                fail("weighted LR sum != 1 at (" + x.str() + ", " + y.str() + ")");
                break;
            }
        }

        DependenceReport lrDep = findActiveDependence(lr);
        if (lrDep.nullity > 0) {
            res.lrDependent = true;
            if (opt.degree.p1 == 0 && opt.degree.p2 == 0) fail("degree (0,0) LR collection is dependent");
            if (lrDep.circuit && lrDep.circuit->members.size() < 8)
                fail("LR circuit of size " + std::to_string(lrDep.circuit->members.size()) + " < 8");
        }

        SplineCollection ms = enumerateMs(mesh);
        DependenceReport msDep = findActiveDependence(ms);
        if (msDep.nullity > 0) {
            res.msDependent = true;
            if (opt.degree.p1 == 0 && opt.degree.p2 == 0) fail("degree (0,0) MS collection is dependent");
            if (msDep.circuit && msDep.circuit->members.size() < 6)
                fail("MS circuit of size " + std::to_string(msDep.circuit->members.size()) + " < 6");
        }
    } catch (const std::exception& e) {
        fail(std::string("exception: ") + e.what());
    }
    return res;
}

}  // namespace

LRMesh randomLrMesh(std::mt19937_64& rng, Degree degree, int insertions) {
    const int nx = std::uniform_int_distribution<int>(2, 4)(rng);
    const int ny = std::uniform_int_distribution<int>(2, 4)(rng);
    LRMesh::KnotList xk, yk;
    xk.emplace_back(Rational(0), degree.p1 + 1);
    for (int i = 1; i <= nx; ++i) xk.emplace_back(Rational(i), 1);
    xk.emplace_back(Rational(nx + 1), degree.p1 + 1);
    yk.emplace_back(Rational(0), degree.p2 + 1);
    for (int i = 1; i <= ny; ++i) yk.emplace_back(Rational(i), 1);
    yk.emplace_back(Rational(ny + 1), degree.p2 + 1);
    LRMesh mesh = newTensorMesh(xk, yk, degree);
    int done = 0, attempts = 0;
    while (done < insertions && attempts < 60) {
        ++attempts;
        if (tryRandomInsertion(rng, mesh)) ++done;
    }
    return mesh;
}

FuzzOutcome runFuzz(const FuzzOptions& options) {
    FuzzOutcome out;
    out.histories = options.histories;

    const unsigned workers = std::max(1u, std::thread::hardware_concurrency());
    std::vector<std::future<std::vector<HistoryResult>>> futures;
    for (unsigned w = 0; w < workers; ++w) {
        futures.push_back(std::async(std::launch::async, [&, w] {
            std::vector<HistoryResult> rs;
            for (int h = static_cast<int>(w); h < options.histories; h += static_cast<int>(workers))
                rs.push_back(runHistory(options.seed + static_cast<std::uint64_t>(h) * 1000003ull, options));
            return rs;
        }));
    }
    for (auto& f : futures) {
        for (HistoryResult& r : f.get()) {
            out.insertions += r.insertions;
            out.msDependent += r.msDependent ? 1 : 0;
            out.lrDependent += r.lrDependent ? 1 : 0;
            out.failures.insert(out.failures.end(), r.failures.begin(), r.failures.end());
        }
    }
    std::sort(out.failures.begin(), out.failures.end());
    return out;
}

}  // namespace lr
