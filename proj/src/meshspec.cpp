#include "lr/meshspec.hpp"

#include <optional>
#include <sstream>
#include <vector>

namespace lr {

namespace {

struct Token {
    std::string text;
    int col;  // 1-based
};

std::vector<Token> tokenize(const std::string& line) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < line.size()) {
        if (line[i] == '#') break;
        if (std::isspace(static_cast<unsigned char>(line[i]))) {
            ++i;
            continue;
        }
        std::size_t j = i;
        while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j])) && line[j] != '#') ++j;
        out.push_back(Token{line.substr(i, j - i), static_cast<int>(i) + 1});
        i = j;
    }
    return out;
}

[[noreturn]] void parseFail(int lineNo, int col, const std::string& msg) {
    throw Error(ErrorCode::ParseError,
                "line " + std::to_string(lineNo) + ", column " + std::to_string(col) + ": " + msg);
}

Rational parseRational(const Token& tok, int lineNo) {
    try {
        return Rational::fromString(tok.text);
    } catch (const std::exception&) {
        parseFail(lineNo, tok.col, "expected a rational 'a/b' or integer, got '" + tok.text + "'");
    }
}

int parseInt(const Token& tok, int lineNo) {
    try {
        std::size_t used = 0;
        int v = std::stoi(tok.text, &used);
        if (used != tok.text.size()) throw std::invalid_argument("trailing");
        return v;
    } catch (const std::exception&) {
        parseFail(lineNo, tok.col, "expected an integer, got '" + tok.text + "'");
    }
}

}  // namespace

LRMesh parseMeshSpec(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string line;
    int lineNo = 0;

    bool sawHeader = false;
    std::optional<Degree> degree;
    std::optional<LRMesh::KnotList> xknots, yknots;
    std::vector<SplitSpec> inserts;
    std::vector<int> insertLines;

    auto parseKnots = [&](const std::vector<Token>& toks) {
        LRMesh::KnotList list;
        for (std::size_t i = 1; i < toks.size(); ++i) {
            const std::string& t = toks[i].text;
            auto colon = t.rfind(':');
            if (colon == std::string::npos)
                parseFail(lineNo, toks[i].col, "expected <pos>:<mult>, got '" + t + "'");
            Rational pos = parseRational(Token{t.substr(0, colon), toks[i].col}, lineNo);
            int mult = parseInt(Token{t.substr(colon + 1), toks[i].col + static_cast<int>(colon) + 1}, lineNo);
            list.emplace_back(std::move(pos), mult);
        }
        if (list.size() < 2) parseFail(lineNo, toks[0].col, "need at least two knots");
        return list;
    };

    while (std::getline(in, line)) {
        ++lineNo;
        std::vector<Token> toks = tokenize(line);
        if (toks.empty()) continue;
        const std::string& kw = toks[0].text;
        if (!sawHeader) {
            if (kw != "lrspec/1") parseFail(lineNo, toks[0].col, "expected header 'lrspec/1'");
            if (toks.size() != 1) parseFail(lineNo, toks[1].col, "unexpected token after header");
            sawHeader = true;
            continue;
        }
        if (kw == "degree") {
            if (toks.size() != 3) parseFail(lineNo, toks[0].col, "degree takes two integers");
            degree = Degree{parseInt(toks[1], lineNo), parseInt(toks[2], lineNo)};
        } else if (kw == "xknots") {
            xknots = parseKnots(toks);
        } else if (kw == "yknots") {
            yknots = parseKnots(toks);
        } else if (kw == "insert") {
            if (toks.size() != 5 && toks.size() != 6)
                parseFail(lineNo, toks[0].col, "insert takes: <v|h> <fixed> <from> <to> [mult]");
            Axis axis;
            if (toks[1].text == "v")
                axis = Axis::Vertical;
            else if (toks[1].text == "h")
                axis = Axis::Horizontal;
            else
                parseFail(lineNo, toks[1].col, "axis must be 'v' or 'h'");
            SplitSpec s{axis, parseRational(toks[2], lineNo),
                        Interval{parseRational(toks[3], lineNo), parseRational(toks[4], lineNo)},
                        toks.size() == 6 ? parseInt(toks[5], lineNo) : 1};
            inserts.push_back(std::move(s));
            insertLines.push_back(lineNo);
        } else {
            parseFail(lineNo, toks[0].col, "unknown directive '" + kw + "'");
        }
    }
    if (!sawHeader) throw Error(ErrorCode::ParseError, "empty document; expected header 'lrspec/1'");
    if (!degree) throw Error(ErrorCode::ParseError, "missing 'degree' directive");
    if (!xknots || !yknots) throw Error(ErrorCode::ParseError, "missing 'xknots'/'yknots' directives");

    LRMesh mesh = [&] {
        try {
            return newTensorMesh(*xknots, *yknots, *degree);
        } catch (const Error& e) {
            throw Error(ErrorCode::SemanticError, std::string("tensor mesh: ") + e.what());
        }
    }();
    for (std::size_t i = 0; i < inserts.size(); ++i) {
        try {
            mesh = insertSplit(mesh, inserts[i]);
        } catch (const Error& e) {
            throw Error(ErrorCode::SemanticError,
                        "insertion #" + std::to_string(i + 1) + " (line " + std::to_string(insertLines[i]) +
                            "): " + e.what());
        }
    }
    return mesh;
}

std::string serializeMeshSpec(const LRMesh& mesh) {
    std::ostringstream os;
    os << "lrspec/1\n";
    os << "degree " << mesh.degree().p1 << " " << mesh.degree().p2 << "\n";
    os << "xknots";
    for (const auto& [pos, mult] : mesh.tensorKnots(Axis::Vertical)) os << " " << pos << ":" << mult;
    os << "\nyknots";
    for (const auto& [pos, mult] : mesh.tensorKnots(Axis::Horizontal)) os << " " << pos << ":" << mult;
    os << "\n";
    for (const SplitSpec& s : mesh.history()) {
        os << "insert " << axisName(s.axis) << " " << s.fixed << " " << s.span.lo << " " << s.span.hi;
        if (s.mult != 1) os << " " << s.mult;
        os << "\n";
    }
    return os.str();
}

}  // namespace lr
