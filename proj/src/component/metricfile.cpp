#include "tensorcalc/metricfile.hpp"

#include "tensorcalc/parse.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace tensorcalc::component {

namespace {

std::string trim(const std::string &s) {
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

struct Piece {
    std::string text;
    std::size_t col;   // 1-based column of text in the line
};

// split on commas at parenthesis depth 0
std::vector<Piece> split_top(const std::string &s, std::size_t col0) {
    std::vector<Piece> out;
    int depth = 0;
    std::size_t st = 0;
    auto push = [&](std::size_t end) {
        std::string raw = s.substr(st, end - st);
        std::size_t lead = raw.find_first_not_of(" \t");
        if (lead == std::string::npos) lead = raw.size();
        out.push_back({trim(raw), col0 + st + lead});
    };
    for (std::size_t i = 0; i < s.size(); ++i) {
        char c = s[i];
        if (c == '(' || c == '[') ++depth;
        if (c == ')' || c == ']') --depth;
        if (c == ',' && depth == 0) {
            push(i);
            st = i + 1;
        }
    }
    push(s.size());
    return out;
}

struct Reader {
    std::size_t line = 0;
    std::set<std::string> known;

    Expr expr(const Piece &p) {
        if (p.text.empty()) throw MetricFileError("empty expression", line, p.col);
        Expr e;
        try {
            e = sym::parse(p.text);
        } catch (const sym::ParseError &err) {
            throw MetricFileError(err.what(), line, p.col + err.column() - 1);
        }
        std::vector<std::string> syms;
        sym::collect_symbols(e, syms);
        for (const auto &s : syms)
            if (s != "%pi" && !known.count(s))
                throw MetricFileError("undeclared symbol '" + s + "'", line, p.col);
        return e;
    }

    std::vector<Expr> row(const std::string &rhs, std::size_t col) {
        std::vector<Expr> r;
        for (const auto &p : split_top(rhs, col)) r.push_back(expr(p));
        return r;
    }
};

bool valid_name(const std::string &s) {
    if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
    return std::all_of(s.begin(), s.end(), [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; });
}

} // namespace

MetricSpec parse_metric_file(const std::string &text) {
    MetricSpec spec;
    Reader rd;
    std::string section;
    std::istringstream in(text);
    std::string raw;
    struct Tau {
        std::size_t i, j, k, line;
        Expr value;
    };
    std::vector<Tau> taus;
    while (std::getline(in, raw)) {
        ++rd.line;
        std::string line = raw.substr(0, raw.find('#'));
        std::string t = trim(line);
        if (t.empty()) continue;
        if (t.front() == '[') {
            if (t.back() != ']') throw MetricFileError("malformed section header", rd.line, 1);
            section = t.substr(1, t.size() - 2);
            static const std::set<std::string> sections{"chart", "constants", "metric", "frame", "torsion", "nonmetricity"};
            if (!sections.count(section)) throw MetricFileError("unknown section [" + section + "]", rd.line, 1);
            continue;
        }
        if (section.empty()) throw MetricFileError("content before the first section", rd.line, 1);
        if (section == "constants") {
            for (const auto &p : split_top(line, 1)) {
                if (p.text.empty()) continue;
                if (!valid_name(p.text)) throw MetricFileError("invalid constant name '" + p.text + "'", rd.line, p.col);
                spec.constants.push_back(p.text);
                rd.known.insert(p.text);
            }
            continue;
        }
        auto eqpos = line.find('=');
        if (eqpos == std::string::npos) throw MetricFileError("expected 'key = value'", rd.line, 1);
        std::string key = trim(line.substr(0, eqpos));
        std::string rhs = line.substr(eqpos + 1);
        std::size_t col = eqpos + 2;
        if (section == "chart") {
            if (key != "coords") throw MetricFileError("unknown key '" + key + "' in [chart]", rd.line, 1);
            for (const auto &p : split_top(rhs, col)) {
                if (!valid_name(p.text)) throw MetricFileError("invalid coordinate name '" + p.text + "'", rd.line, p.col);
                spec.chart.coords.push_back(p.text);
                rd.known.insert(p.text);
            }
        } else if (section == "metric") {
            if (key != "row") throw MetricFileError("unknown key '" + key + "' in [metric]", rd.line, 1);
            spec.metric.push_back(rd.row(rhs, col));
        } else if (section == "frame") {
            if (key == "row") {
                spec.frame.push_back(rd.row(rhs, col));
            } else if (key == "frame_metric") {
                std::string v = trim(rhs);
                if (v.rfind("diag(", 0) != 0 || v.back() != ')')
                    throw MetricFileError("frame_metric must be diag(...)", rd.line, col);
                auto d = rd.row(v.substr(5, v.size() - 6), col + rhs.find("diag(") + 5);
                spec.frame_metric.assign(d.size(), std::vector<Expr>(d.size(), Expr(0)));
                for (std::size_t i = 0; i < d.size(); ++i) spec.frame_metric[i][i] = d[i];
            } else if (key == "frame_metric_row") {
                spec.frame_metric.push_back(rd.row(rhs, col));
            } else {
                throw MetricFileError("unknown key '" + key + "' in [frame]", rd.line, 1);
            }
        } else if (section == "torsion") {
            if (key.rfind("tau[", 0) != 0 || key.back() != ']')
                throw MetricFileError("expected tau[i,j,k] = value", rd.line, 1);
            auto names = split_top(key.substr(4, key.size() - 5), 5);
            if (names.size() != 3) throw MetricFileError("tau needs three indices", rd.line, 1);
            std::size_t idx[3];
            for (int q = 0; q < 3; ++q) {
                auto it = std::find(spec.chart.coords.begin(), spec.chart.coords.end(), names[q].text);
                if (it == spec.chart.coords.end())
                    throw MetricFileError("unknown coordinate '" + names[q].text + "'", rd.line, names[q].col);
                idx[q] = static_cast<std::size_t>(it - spec.chart.coords.begin());
            }
            taus.push_back({idx[0], idx[1], idx[2], rd.line, rd.expr({trim(rhs), col})});
        } else if (section == "nonmetricity") {
            if (key != "mu") throw MetricFileError("unknown key '" + key + "' in [nonmetricity]", rd.line, 1);
            spec.nonmetricity = rd.row(rhs, col);
        }
    }
    const std::size_t n = spec.chart.dim();
    if (n == 0) throw MetricFileError("missing [chart] coords", rd.line);
    if (spec.metric.empty() && spec.frame.empty()) throw MetricFileError("no [metric] or [frame] given", rd.line);
    auto check_square = [&](const ExprMatrix &m, const char *what) {
        if (m.empty()) return;
        if (m.size() != n)
            throw MetricFileError(std::string(what) + " has " + std::to_string(m.size()) + " rows, expected " +
                                      std::to_string(n),
                                  rd.line);
        for (const auto &r : m)
            if (r.size() != n) throw MetricFileError(std::string(what) + " rows need " + std::to_string(n) + " entries", rd.line);
    };
    check_square(spec.metric, "metric");
    check_square(spec.frame, "frame");
    if (!spec.frame.empty()) {
        if (spec.frame_metric.empty()) {
            spec.frame_metric.assign(n, std::vector<Expr>(n, Expr(0)));
            for (std::size_t i = 0; i < n; ++i) spec.frame_metric[i][i] = Expr(1);
        }
        check_square(spec.frame_metric, "frame_metric");
    }
    if (!spec.nonmetricity.empty() && spec.nonmetricity.size() != n)
        throw MetricFileError("mu needs " + std::to_string(n) + " components", rd.line);
    if (!taus.empty()) {
        spec.torsion.assign(n * n * n, Expr(0));
        std::vector<bool> set(n * n * n, false);
        for (const auto &t : taus) {
            std::size_t k = (t.i * n + t.j) * n + t.k;
            if (set[k]) throw MetricFileError("torsion component given twice", t.line);
            spec.torsion[k] = t.value;
            set[k] = true;
        }
        for (const auto &t : taus) {
            std::size_t sw = (t.j * n + t.i) * n + t.k;
            if (!set[sw]) {
                spec.torsion[sw] = -t.value;
                set[sw] = true;
            }
        }
    }
    return spec;
}

namespace {

std::string join_row(const std::vector<Expr> &r) {
    std::string s;
    for (std::size_t i = 0; i < r.size(); ++i) {
        if (i) s += ", ";
        s += sym::render(r[i]);
    }
    return s;
}

bool is_diagonal(const ExprMatrix &m) {
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < m.size(); ++j)
            if (i != j && !m[i][j].is_zero_literal()) return false;
    return true;
}

} // namespace

std::string write_metric_file(const MetricSpec &spec) {
    std::ostringstream o;
    const std::size_t n = spec.chart.dim();
    o << "[chart]\ncoords = ";
    for (std::size_t i = 0; i < n; ++i) o << (i ? ", " : "") << spec.chart.coords[i];
    o << "\n";
    if (!spec.constants.empty()) {
        o << "\n[constants]\n";
        for (std::size_t i = 0; i < spec.constants.size(); ++i) o << (i ? ", " : "") << spec.constants[i];
        o << "\n";
    }
    if (!spec.metric.empty()) {
        o << "\n[metric]\n";
        for (const auto &r : spec.metric) o << "row = " << join_row(r) << "\n";
    }
    if (!spec.frame.empty()) {
        o << "\n[frame]\n";
        for (const auto &r : spec.frame) o << "row = " << join_row(r) << "\n";
        if (is_diagonal(spec.frame_metric)) {
            std::vector<Expr> d;
            for (std::size_t i = 0; i < n; ++i) d.push_back(spec.frame_metric[i][i]);
            o << "frame_metric = diag(" << join_row(d) << ")\n";
        } else {
            for (const auto &r : spec.frame_metric) o << "frame_metric_row = " << join_row(r) << "\n";
        }
    }
    if (!spec.torsion.empty()) {
        o << "\n[torsion]\n";
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                for (std::size_t k = 0; k < n; ++k) {
                    const Expr &e = spec.torsion[(i * n + j) * n + k];
                    if (e.is_zero_literal()) continue;
                    o << "tau[" << spec.chart.coords[i] << "," << spec.chart.coords[j] << "," << spec.chart.coords[k]
                      << "] = " << sym::render(e) << "\n";
                }
    }
    if (!spec.nonmetricity.empty()) o << "\n[nonmetricity]\nmu = " << join_row(spec.nonmetricity) << "\n";
    return o.str();
}

MetricContext build_context(const MetricSpec &spec, bool use_frame) {
    if (use_frame && !spec.has_frame()) throw GeometryError("no frame base given");
    MetricContext c = (use_frame || spec.metric.empty())
                          ? MetricContext::from_frame(spec.chart, spec.frame, spec.frame_metric)
                          : MetricContext::from_metric(spec.chart, spec.metric);
    if (!use_frame && c.cframe_flag()) c.set_cframe_flag(false);
    if (!spec.torsion.empty()) c.set_torsion(spec.torsion);
    if (!spec.nonmetricity.empty()) c.set_nonmetricity(spec.nonmetricity);
    return c;
}

} // namespace tensorcalc::component
