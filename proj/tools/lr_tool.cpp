#include "lr/dependence.hpp"
#include "lr/fuzz.hpp"
#include "lr/meshspec.hpp"
#include "lr/scenarios.hpp"
#include "lr/svg.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

namespace {

using namespace lr;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitInput = 2;
constexpr int kExitDependent = 3;

struct MeshInput {
    std::string scenario;
    std::string meshFile;
    bool strict = false;
};

void addMeshOptions(CLI::App* cmd, MeshInput& in) {
    auto* s = cmd->add_option("--scenario", in.scenario, "built-in mesh name (see `lr_tool scenarios`)");
    auto* f = cmd->add_option("--mesh", in.meshFile, "lrspec/1 mesh file");
    cmd->add_flag("--strict", in.strict, "treat LR-rule violations in the input as errors");
    s->excludes(f);
}

LRMesh loadMesh(const MeshInput& in, std::ostream& report) {
    LRMesh mesh = [&] {
        if (!in.scenario.empty()) {
            report << "mesh: scenario " << in.scenario << "\n";
            return builtinScenario(in.scenario);
        }
        if (in.meshFile.empty()) throw Error(ErrorCode::ParseError, "one of --scenario/--mesh is required");
        std::ifstream f(in.meshFile);
        if (!f) throw Error(ErrorCode::ParseError, "cannot open '" + in.meshFile + "'");
        std::ostringstream buf;
        buf << f.rdbuf();
        report << "mesh: file " << in.meshFile << "\n";
        return parseMeshSpec(buf.str());
    }();
    report << "degree: " << mesh.degree().p1 << " " << mesh.degree().p2 << "\n";
    std::vector<RuleViolation> violations = validateLrRules(mesh);
    if (!violations.empty()) {
        if (in.strict)
            throw Error(ErrorCode::SemanticError,
                        "mesh violates the LR-rules (" + std::to_string(violations.size()) + " violation(s))");
        for (const RuleViolation& v : violations)
            report << "warning: LR-rule " << v.rule << " (step " << v.step << "): " << v.what << "\n";
    }
    return mesh;
}

SplitSpec parseSplitArg(const std::string& s) {
    std::vector<std::string> parts;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) parts.push_back(item);
    if (parts.size() != 4 && parts.size() != 5)
        throw Error(ErrorCode::ParseError, "--split expects axis,fixed,from,to[,mult]");
    Axis axis;
    if (parts[0] == "v")
        axis = Axis::Vertical;
    else if (parts[0] == "h")
        axis = Axis::Horizontal;
    else
        throw Error(ErrorCode::ParseError, "--split axis must be 'v' or 'h'");
    return SplitSpec{axis, Rational::fromString(parts[1]),
                     Interval{Rational::fromString(parts[2]), Rational::fromString(parts[3])},
                     parts.size() == 5 ? std::stoi(parts[4]) : 1};
}

CollectionKind parseKind(const std::string& kind) {
    if (kind == "ms") return CollectionKind::MS;
    if (kind == "lr") return CollectionKind::LR;
    throw Error(ErrorCode::ParseError, "--kind must be 'ms' or 'lr'");
}

SplineCollection buildCollection(const LRMesh& mesh, CollectionKind kind) {
    return kind == CollectionKind::MS ? enumerateMs(mesh) : deriveLr(mesh);
}

void printBspline(std::ostream& os, const TensorBSpline& b, bool withWeight) {
    os << "x=" << str(b.x) << " y=" << str(b.y);
    if (withWeight) os << " weight=" << b.weight;
}

void emit(const std::string& report, const std::string& outPath) {
    std::cout << report;
    if (!outPath.empty()) {
        std::ofstream f(outPath);
        f << report;
    }
}

int mapError(const Error& e, std::ostream& os) {
    os << "error: " << e.what() << "\n";
    switch (e.code()) {
        case ErrorCode::ParseError:
        case ErrorCode::SemanticError:
        case ErrorCode::UnknownScenario:
        case ErrorCode::LRRulesViolated: return kExitInput;
        default: return kExitInput;
    }
}

struct Timer {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    long long ms() const {
        return std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start)
            .count();
    }
};

std::string commandEcho(int argc, char** argv) {
    std::string s;
    for (int i = 0; i < argc; ++i) {
        if (i) s += " ";
        s += argv[i];
    }
    return s;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact LR-mesh and LR/MS B-spline analysis"};
    app.require_subcommand(1);

    MeshInput meshIn;
    std::string outPath, kindStr = "lr", splitStr, svgPath;
    bool improved = false, overlayVertices = false;
    std::string overlayBasis, overlayCircuit;
    FuzzOptions fuzzOpt;
    std::vector<int> fuzzDegree{2, 2};

    auto* cmdScenarios = app.add_subcommand("scenarios", "list built-in meshes");

    auto* cmdDim = app.add_subcommand("dim", "spline-space dimension of the mesh");
    addMeshOptions(cmdDim, meshIn);
    cmdDim->add_option("--out", outPath, "also write the report to a file");

    auto* cmdBasis = app.add_subcommand("basis", "enumerate the MS or LR collection");
    addMeshOptions(cmdBasis, meshIn);
    cmdBasis->add_option("--kind", kindStr, "ms|lr (default lr)");
    cmdBasis->add_option("--out", outPath, "also write the report to a file");

    auto* cmdDepend = app.add_subcommand("depend", "linear dependence analysis of a collection");
    addMeshOptions(cmdDepend, meshIn);
    cmdDepend->add_option("--kind", kindStr, "ms|lr (default lr)");
    cmdDepend->add_option("--out", outPath, "also write the report to a file");

    auto* cmdPeel = app.add_subcommand("peel", "peeling algorithm on the LR collection");
    addMeshOptions(cmdPeel, meshIn);
    cmdPeel->add_flag("--improved", improved, "also peel owners of unshared T-vertices");
    cmdPeel->add_option("--out", outPath, "also write the report to a file");

    auto* cmdHih = app.add_subcommand("handinhand", "spanning test for one insertion");
    addMeshOptions(cmdHih, meshIn);
    cmdHih->add_option("--split", splitStr, "axis,fixed,from,to[,mult] e.g. v,5/8,1/3,4/5")->required();
    cmdHih->add_option("--kind", kindStr, "ms|lr (default lr)");
    cmdHih->add_option("--out", outPath, "also write the report to a file");

    auto* cmdRender = app.add_subcommand("render", "render the mesh as SVG");
    addMeshOptions(cmdRender, meshIn);
    cmdRender->add_option("--svg", svgPath, "output SVG path")->required();
    cmdRender->add_option("--basis", overlayBasis, "shade supports of a collection: ms|lr");
    cmdRender->add_option("--circuit", overlayCircuit, "highlight the circuit of a collection: ms|lr");
    cmdRender->add_flag("--vertices", overlayVertices, "mark T- and cross-vertices");

    auto* cmdValidate = app.add_subcommand("validate", "LR-rule report for the mesh");
    addMeshOptions(cmdValidate, meshIn);
    cmdValidate->add_option("--out", outPath, "also write the report to a file");

    auto* cmdFuzz = app.add_subcommand("fuzz", "seeded randomized property suite");
    cmdFuzz->add_option("--histories", fuzzOpt.histories, "number of random refinement histories (default 200)");
    cmdFuzz->add_option("--insertions", fuzzOpt.insertionsPerHistory, "insertions per history (default 4)");
    cmdFuzz->add_option("--degree", fuzzDegree, "bidegree, two integers (default 2 2)")->expected(2);
    cmdFuzz->add_option("--seed", fuzzOpt.seed, "RNG seed (default fixed; env LRSPLINE_SEED overrides)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    Timer timer;
    std::ostringstream report;
    report << "command: " << commandEcho(argc, argv) << "\n";
    try {
        if (cmdScenarios->parsed()) {
            for (const ScenarioInfo& s : scenarioList()) std::cout << s.name << ": " << s.summary << "\n";
            return kExitOk;
        }
        if (cmdDim->parsed()) {
            LRMesh mesh = loadMesh(meshIn, report);
            report << "dim: " << dimLr(mesh) << "\n";
            report << "timing-ms: " << timer.ms() << "\n";
            emit(report.str(), outPath);
            return kExitOk;
        }
        if (cmdBasis->parsed()) {
            LRMesh mesh = loadMesh(meshIn, report);
            CollectionKind kind = parseKind(kindStr);
            SplineCollection coll = buildCollection(mesh, kind);
            report << "collection: " << collectionKindName(kind) << "\n";
            report << "cardinality: " << coll.size() << "\n";
            for (const TensorBSpline& b : coll.bsplines) {
                report << "bspline: ";
                printBspline(report, b, kind == CollectionKind::LR);
                report << "\n";
            }
            report << "timing-ms: " << timer.ms() << "\n";
            emit(report.str(), outPath);
            return kExitOk;
        }
        if (cmdDepend->parsed()) {
            LRMesh mesh = loadMesh(meshIn, report);
            CollectionKind kind = parseKind(kindStr);
            SplineCollection coll = buildCollection(mesh, kind);
            report << "collection: " << collectionKindName(kind) << "\n";
            report << "cardinality: " << coll.size() << "\n";
            DependenceReport dep = findActiveDependence(coll);
            report << "rank: " << dep.rank << "\n";
            report << "nullity: " << dep.nullity << "\n";
            report << "verdict: " << (dep.nullity == 0 ? "independent" : "dependent") << "\n";
            if (!dep.activeSet.empty()) {
                report << "active-set-size: " << dep.activeSet.size() << "\n";
            }
            if (dep.circuit) {
                report << "circuit-size: " << dep.circuit->members.size() << "\n";
                for (std::size_t i = 0; i < dep.circuit->members.size(); ++i) {
                    report << "circuit-member: ";
                    printBspline(report, coll.bsplines[dep.circuit->members[i]], false);
                    report << " coeff=" << dep.circuit->coefficients(static_cast<Eigen::Index>(i)) << "\n";
                }
            }
            if (dep.diagnostics) {
                report << "diagnostics: nestedness=" << (dep.diagnostics->nestedness.pass ? "pass" : "fail")
                       << " meshline-share=" << (dep.diagnostics->meshlineShare.pass ? "pass" : "fail")
                       << " tvertex-share=" << (dep.diagnostics->tvertexShare.pass ? "pass" : "fail") << "\n";
            }
            report << "timing-ms: " << timer.ms() << "\n";
            emit(report.str(), outPath);
            return dep.nullity > 0 ? kExitDependent : kExitOk;
        }
        if (cmdPeel->parsed()) {
            LRMesh mesh = loadMesh(meshIn, report);
            SplineCollection coll = deriveLr(mesh);
            PeelReport pr = peel(coll, improved);
            report << "collection: LR\n";
            report << "cardinality: " << coll.size() << "\n";
            report << "improved: " << (improved ? "yes" : "no") << "\n";
            report << "overloaded-bsplines: " << pr.overloadedBsplines.size() << "\n";
            report << "overloaded-elements: " << pr.overloadedElements.size() << "\n";
            for (std::size_t r = 0; r < pr.rounds.size(); ++r) {
                report << "round " << (r + 1) << ": removed";
                for (std::size_t i : pr.rounds[r]) {
                    report << " ";
                    printBspline(report, coll.bsplines[i], false);
                    report << ";";
                }
                report << "\n";
            }
            report << "verdict: "
                   << (pr.verdict == PeelReport::Verdict::Independent ? "Independent" : "Inconclusive") << "\n";
            report << "timing-ms: " << timer.ms() << "\n";
            emit(report.str(), outPath);
            return kExitOk;
        }
        if (cmdHih->parsed()) {
            LRMesh mesh = loadMesh(meshIn, report);
            SplitSpec split = parseSplitArg(splitStr);
            CollectionKind kind = parseKind(kindStr);
            HandInHandReport hih = handInHand(mesh, split, kind);
            report << "kind: " << collectionKindName(kind) << "\n";
            report << "expanded-split: " << axisName(hih.expanded.axis) << " " << hih.expanded.fixed << " ["
                   << hih.expanded.span.lo << ", " << hih.expanded.span.hi << "]\n";
            report << "r: " << hih.r << "\n";
            report << "restricted-count: " << hih.restrictedCount << "\n";
            report << "restricted-rank: " << hih.restrictedRank << "\n";
            report << "hand-in-hand: " << (hih.goesHandInHand ? "yes" : "no") << "\n";
            report << "timing-ms: " << timer.ms() << "\n";
            emit(report.str(), outPath);
            return kExitOk;
        }
        if (cmdRender->parsed()) {
            LRMesh mesh = loadMesh(meshIn, report);
            SvgOverlays ov;
            ov.vertexMarks = overlayVertices;
            if (!overlayBasis.empty()) {
                SplineCollection coll = buildCollection(mesh, parseKind(overlayBasis));
                for (const TensorBSpline& b : coll.bsplines) ov.supports.push_back(b.support());
            }
            if (!overlayCircuit.empty()) {
                SplineCollection coll = buildCollection(mesh, parseKind(overlayCircuit));
                DependenceReport dep = findActiveDependence(coll);
                if (dep.circuit)
                    for (std::size_t i : dep.circuit->members) ov.circuit.push_back(coll.bsplines[i].support());
            }
            std::ofstream f(svgPath);
            if (!f) throw Error(ErrorCode::ParseError, "cannot write '" + svgPath + "'");
            f << renderSvg(mesh, ov);
            std::cout << report.str() << "svg: " << svgPath << "\n";
            return kExitOk;
        }
        if (cmdValidate->parsed()) {
            MeshInput lenient = meshIn;
            lenient.strict = false;  // this command reports; it does not gate
            LRMesh mesh = loadMesh(lenient, report);
            std::vector<RuleViolation> violations = validateLrRules(mesh);
            report << "violations: " << violations.size() << "\n";
            for (const RuleViolation& v : violations)
                report << "violation: rule " << v.rule << " step " << v.step << ": " << v.what << "\n";
            report << "timing-ms: " << timer.ms() << "\n";
            emit(report.str(), outPath);
            return kExitOk;
        }
        if (cmdFuzz->parsed()) {
            fuzzOpt.degree = Degree{fuzzDegree[0], fuzzDegree[1]};
            if (const char* env = std::getenv("LRSPLINE_SEED")) fuzzOpt.seed = std::strtoull(env, nullptr, 10);
            FuzzOutcome out = runFuzz(fuzzOpt);
            std::cout << "histories: " << out.histories << "\n";
            std::cout << "insertions: " << out.insertions << "\n";
            std::cout << "ms-dependent-histories: " << out.msDependent << "\n";
            std::cout << "lr-dependent-histories: " << out.lrDependent << "\n";
            for (const std::string& f : out.failures) std::cout << "failure: " << f << "\n";
            std::cout << "verdict: " << (out.failures.empty() ? "all properties held" : "FAILURES") << "\n";
            std::cout << "timing-ms: " << timer.ms() << "\n";
            return out.failures.empty() ? kExitOk : kExitUsage;
        }
    } catch (const Error& e) {
        return mapError(e, std::cerr);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    }
    return kExitUsage;
}
