#include "cfas/io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

namespace cfas::io {

namespace {

// Splits into lines; a trailing newline does not create an extra line.
std::vector<std::string_view> split_lines(std::string_view text) {
    std::vector<std::string_view> lines;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string_view::npos) {
            if (start < text.size()) lines.push_back(text.substr(start));
            break;
        }
        lines.push_back(text.substr(start, end - start));
        start = end + 1;
    }
    return lines;
}

std::vector<std::string_view> split_tokens(std::string_view line) {
    std::vector<std::string_view> tokens;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
        std::size_t j = i;
        while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
        if (j > i) tokens.push_back(line.substr(i, j - i));
        i = j;
    }
    return tokens;
}

int parse_int(std::string_view token, int line, const std::string& what) {
    int value = 0;
    auto [ptr, ec] =
        std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc() || ptr != token.data() + token.size())
        throw ParseError(line, "expected " + what + ", got '" +
                                   std::string(token) + "'");
    return value;
}

bool is_blank(std::string_view line) {
    for (char c : line)
        if (!std::isspace(static_cast<unsigned char>(c))) return false;
    return true;
}

}  // namespace

// --- DIMACS -----------------------------------------------------------------

DimacsDocument parse_dimacs_document(std::string_view text) {
    DimacsDocument doc;
    bool header_seen = false;
    const auto lines = split_lines(text);
    for (std::size_t i = 0; i < lines.size(); ++i) {
        const int lineno = static_cast<int>(i) + 1;
        std::string_view line = lines[i];
        if (is_blank(line)) continue;
        if (line[0] == 'c') {
            doc.comments.emplace_back(line);
            continue;
        }
        auto tokens = split_tokens(line);
        if (!header_seen) {
            if (tokens.size() != 4 || tokens[0] != "p" || tokens[1] != "cnf")
                throw ParseError(lineno, "expected header 'p cnf <vars> <clauses>'");
            doc.declared_vars = parse_int(tokens[2], lineno, "variable count");
            doc.declared_clauses = parse_int(tokens[3], lineno, "clause count");
            if (doc.declared_vars < 0 || doc.declared_clauses < 0)
                throw ParseError(lineno, "negative counts in header");
            doc.instance.num_vars = doc.declared_vars;
            header_seen = true;
            continue;
        }
        if (tokens.size() != 4)
            throw ParseError(lineno, "exactly 3 literals required");
        if (parse_int(tokens[3], lineno, "clause terminator") != 0)
            throw ParseError(lineno, "clause must end with 0");
        std::array<reduction::Literal, 3> clause;
        for (int j = 0; j < 3; ++j) {
            const int lit = parse_int(tokens[j], lineno, "literal");
            if (lit == 0) throw ParseError(lineno, "exactly 3 literals required");
            const int var = lit < 0 ? -lit : lit;
            if (var > doc.declared_vars)
                throw ParseError(lineno, "variable " + std::to_string(var) +
                                             " exceeds declared count");
            clause[j] = {var, lit < 0};
        }
        doc.instance.clauses.push_back(clause);
    }
    if (!header_seen) throw ParseError(1, "missing 'p cnf' header");
    if (doc.instance.num_clauses() != doc.declared_clauses)
        throw ParseError(static_cast<int>(lines.size()),
                         "header declares " +
                             std::to_string(doc.declared_clauses) +
                             " clauses but " +
                             std::to_string(doc.instance.num_clauses()) +
                             " were given");
    return doc;
}

reduction::CnfInstance parse_dimacs(std::string_view text) {
    return parse_dimacs_document(text).instance;
}

std::string write_dimacs(const reduction::CnfInstance& instance) {
    std::ostringstream out;
    out << "p cnf " << instance.num_vars << " " << instance.num_clauses()
        << "\n";
    for (const auto& clause : instance.clauses) {
        for (const auto& lit : clause)
            out << (lit.negated ? -lit.variable : lit.variable) << " ";
        out << "0\n";
    }
    return out.str();
}

// --- tournament --------------------------------------------------------------

std::string write_tournament(const Tournament& t) {
    std::ostringstream out;
    out << "tournament " << t.size() << "\n";
    for (VertexId u = 0; u + 1 < t.size(); ++u) {
        for (VertexId v = u + 1; v < t.size(); ++v)
            out << (t.arc(u, v) ? '1' : '0');
        out << "\n";
    }
    if (t.has_labels()) {
        out << "labels\n";
        for (VertexId v = 0; v < t.size(); ++v)
            out << v << "\t" << t.labels()[v] << "\n";
    }
    return out.str();
}

Tournament read_tournament(std::string_view text) {
    const auto lines = split_lines(text);
    if (lines.empty()) throw ParseError(1, "empty tournament file");
    auto header = split_tokens(lines[0]);
    if (header.size() != 2 || header[0] != "tournament")
        throw ParseError(1, "expected header 'tournament <n>'");
    const int n = parse_int(header[1], 1, "vertex count");
    if (n < 0) throw ParseError(1, "negative vertex count");

    TournamentBuilder builder(n);
    std::size_t next = 1;
    for (VertexId u = 0; u + 1 < n; ++u, ++next) {
        if (next >= lines.size())
            throw ParseError(static_cast<int>(next) + 1,
                             "missing orientation row for vertex " +
                                 std::to_string(u));
        std::string_view row = lines[next];
        const int expected = n - 1 - u;
        if (static_cast<int>(row.size()) != expected)
            throw ParseError(static_cast<int>(next) + 1,
                             "row for vertex " + std::to_string(u) + " needs " +
                                 std::to_string(expected) + " characters");
        for (int j = 1; j <= expected; ++j) {
            const char c = row[j - 1];
            if (c == '1')
                builder.set_arc(u, u + j);
            else if (c == '0')
                builder.set_arc(u + j, u);
            else
                throw ParseError(static_cast<int>(next) + 1,
                                 "orientation characters must be 0 or 1");
        }
    }

    std::vector<std::string> labels;
    if (next < lines.size()) {
        if (lines[next] != "labels")
            throw ParseError(static_cast<int>(next) + 1,
                             "expected 'labels' or end of file");
        ++next;
        labels.assign(n, "");
        std::vector<bool> seen(n, false);
        for (; next < lines.size(); ++next) {
            std::string_view line = lines[next];
            const int lineno = static_cast<int>(next) + 1;
            std::size_t tab = line.find('\t');
            if (tab == std::string_view::npos)
                throw ParseError(lineno, "label line needs index<TAB>label");
            const int v = parse_int(line.substr(0, tab), lineno, "vertex index");
            if (v < 0 || v >= n) throw ParseError(lineno, "vertex index out of range");
            if (seen[v]) throw ParseError(lineno, "duplicate label for vertex");
            seen[v] = true;
            labels[v] = std::string(line.substr(tab + 1));
        }
        for (int v = 0; v < n; ++v)
            if (!seen[v])
                throw ParseError(static_cast<int>(lines.size()),
                                 "label section misses vertex " +
                                     std::to_string(v));
    }
    return builder.finalize(std::move(labels));
}

// --- ordering ----------------------------------------------------------------

std::string write_ordering(const Ordering& ord) {
    std::ostringstream out;
    for (int i = 0; i < ord.size(); ++i) {
        if (i) out << " ";
        out << ord.at(i);
    }
    out << "\n";
    return out.str();
}

Ordering read_ordering(std::string_view text, const Tournament& context) {
    const auto lines = split_lines(text);
    for (std::size_t i = 1; i < lines.size(); ++i)
        if (!is_blank(lines[i]))
            throw ParseError(static_cast<int>(i) + 1,
                             "ordering file must be a single line");
    auto tokens = lines.empty() ? std::vector<std::string_view>{}
                                : split_tokens(lines[0]);
    if (static_cast<int>(tokens.size()) != context.size())
        throw ParseError(1, "expected " + std::to_string(context.size()) +
                                " vertices, got " +
                                std::to_string(tokens.size()));
    std::vector<VertexId> seq;
    seq.reserve(tokens.size());
    for (auto token : tokens) {
        bool numeric = !token.empty();
        for (char c : token)
            if (!std::isdigit(static_cast<unsigned char>(c))) numeric = false;
        if (numeric) {
            seq.push_back(parse_int(token, 1, "vertex index"));
        } else {
            if (!context.has_labels())
                throw ParseError(1, "label '" + std::string(token) +
                                        "' used but tournament is unlabeled");
            const auto& labels = context.labels();
            auto it = std::find(labels.begin(), labels.end(),
                                std::string(token));
            if (it == labels.end())
                throw ParseError(1, "unknown vertex label '" +
                                        std::string(token) + "'");
            seq.push_back(static_cast<VertexId>(it - labels.begin()));
        }
    }
    try {
        return Ordering::of_sequence(std::move(seq));
    } catch (const std::invalid_argument& e) {
        throw ParseError(1, e.what());
    }
}

// --- roles ---------------------------------------------------------------------

std::string write_roles(const reduction::ReducedTournament& r) {
    std::ostringstream out;
    for (VertexId v = 0; v < r.tournament.size(); ++v)
        out << v << "\t" << r.label(v) << "\n";
    return out.str();
}

std::vector<std::pair<int, std::string>> read_roles(std::string_view text) {
    std::vector<std::pair<int, std::string>> out;
    const auto lines = split_lines(text);
    for (std::size_t i = 0; i < lines.size(); ++i) {
        if (is_blank(lines[i])) continue;
        const int lineno = static_cast<int>(i) + 1;
        std::size_t tab = lines[i].find('\t');
        if (tab == std::string_view::npos)
            throw ParseError(lineno, "role line needs index<TAB>label");
        out.emplace_back(parse_int(lines[i].substr(0, tab), lineno,
                                   "vertex index"),
                         std::string(lines[i].substr(tab + 1)));
    }
    return out;
}

// --- assignment -----------------------------------------------------------------

std::string write_assignment(const assignment::Assignment& a) {
    std::ostringstream out;
    for (int v = 1; v <= a.num_vars; ++v)
        out << v << " " << (a.value(v) ? 1 : 0) << "\n";
    return out.str();
}

assignment::Assignment read_assignment(std::string_view text, int num_vars) {
    assignment::Assignment a = assignment::Assignment::all_false(num_vars);
    std::vector<bool> seen(num_vars, false);
    const auto lines = split_lines(text);
    for (std::size_t i = 0; i < lines.size(); ++i) {
        if (is_blank(lines[i])) continue;
        const int lineno = static_cast<int>(i) + 1;
        auto tokens = split_tokens(lines[i]);
        if (tokens.size() != 2)
            throw ParseError(lineno, "assignment line needs '<var> 0|1'");
        const int var = parse_int(tokens[0], lineno, "variable index");
        if (var < 1 || var > num_vars)
            throw ParseError(lineno, "variable out of range");
        if (seen[var - 1]) throw ParseError(lineno, "variable assigned twice");
        seen[var - 1] = true;
        if (tokens[1] == "1")
            a.set(var, true);
        else if (tokens[1] == "0")
            a.set(var, false);
        else
            throw ParseError(lineno, "value must be 0 or 1");
    }
    for (int v = 1; v <= num_vars; ++v)
        if (!seen[v - 1])
            throw ParseError(static_cast<int>(lines.size()),
                             "variable " + std::to_string(v) + " unassigned");
    return a;
}

// --- files -----------------------------------------------------------------------

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void write_file(const std::string& path, std::string_view data) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << data;
    if (!out) throw std::runtime_error("write failed for " + path);
}

}  // namespace cfas::io
