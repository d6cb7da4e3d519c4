#pragma once

#include "tensorcalc/metricfile.hpp"

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace tensorcalc::catalog {

using component::MetricContext;
using component::MetricSpec;

class CatalogError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class Signature { Euclidean, Lorentz };

struct Entry {
    std::string name;
    std::vector<std::string> coords;
    std::vector<std::string> constants;
    std::string constraints;                        // human-readable domain note
    std::vector<std::vector<std::string>> metric;
    std::vector<std::vector<std::string>> frame;    // empty: no frame
    Signature signature = Signature::Euclidean;
    std::map<std::string, double> sample;           // a point inside the domain
    bool curved = false;
};

struct FlatExtension {
    std::size_t count = 0;
    Signature signature = Signature::Euclidean;
};

const std::vector<Entry> &entries();
std::vector<std::string> list_entries();
const Entry &find(const std::string &name);

MetricSpec spec(const Entry &e, std::optional<FlatExtension> extra = std::nullopt);
MetricContext load(const std::string &name, bool use_frame = false, std::optional<FlatExtension> extra = std::nullopt);

struct FrameCheck {
    bool consistent = false;
    bool exact = false;          // proven by zero tests; otherwise by sampling the domain
    double max_deviation = 0;
};

// eta_ab e^(a)_i e^(b)_j against the tabulated metric
FrameCheck frame_consistency(const Entry &e);

} // namespace tensorcalc::catalog
