#pragma once

#include "tensorcalc/component.hpp"

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace tensorcalc::component {

class MetricFileError : public std::runtime_error {
public:
    MetricFileError(const std::string &msg, std::size_t line, std::size_t column = 0)
        : std::runtime_error(where(line, column) + msg), line_(line), column_(column) {}
    std::size_t line() const { return line_; }
    std::size_t column() const { return column_; }

private:
    static std::string where(std::size_t line, std::size_t column) {
        std::string s = "line " + std::to_string(line);
        if (column) s += ", column " + std::to_string(column);
        return s + ": ";
    }
    std::size_t line_, column_;
};

// Parsed form of a metric definition file:
//
//   [chart]          coords = t, r, theta, phi
//   [constants]      m, a
//   [metric]         row = <expr>, <expr>, ...     (one per coordinate)
//   [frame]          row = ...   frame_metric = diag(-1,1,1,1) | frame_metric_row = ...
//   [torsion]        tau[r,phi,phi] = <expr>       (tau_{r phi}^phi; the swapped pair defaults to minus)
//   [nonmetricity]   mu = <expr>, <expr>, ...
//
// '#' starts a comment.
struct MetricSpec {
    Chart chart;
    std::vector<std::string> constants;
    ExprMatrix metric;
    ExprMatrix frame, frame_metric;
    std::vector<Expr> torsion;   // empty or n^3, flattened tau_ij^k
    std::vector<Expr> nonmetricity;

    bool has_frame() const { return !frame.empty(); }
};

MetricSpec parse_metric_file(const std::string &text);
std::string write_metric_file(const MetricSpec &spec);

// Builds a context; use_frame selects the frame base when one is present.
MetricContext build_context(const MetricSpec &spec, bool use_frame);

} // namespace tensorcalc::component
