#pragma once

#include <string>
#include <utility>
#include <vector>

#include "rslab/body.hpp"
#include "rslab/density.hpp"
#include "rslab/functional.hpp"
#include "rslab/integrate.hpp"
#include "rslab/verify.hpp"

namespace rslab {

// Body JSON: {"dim": n, "form": "vpolytope"|"ball",
//             "vertices": [[...],...] | "center": [...], "radius": r,
//             "label": "..."}
// Oracle-backed bodies have no serializable form and raise FormError.
std::string body_to_json(const Body& k);
Body body_from_json(const std::string& text);

// QCFunction JSON: {"sup": s, "levels": [{"t": t, "body": <Body JSON>}, ...]}
std::string qc_function_to_json(const QCFunction& f);
QCFunction qc_function_from_json(const std::string& text);

// stable content hash (16 hex digits) used when echoing inputs in reports
std::string body_hash(const Body& k);

// Ordered input echo attached to report JSON. Keys stay in insertion order so
// identical runs serialize identically.
struct InputEcho {
    std::vector<std::pair<std::string, std::string>> items;

    void add(const std::string& key, const std::string& value);
    void add_body(const std::string& key, const Body& k);
    void add_density(const std::string& key, const Density& d);
    void add_config(const IntegrateConfig& cfg);
};

std::string report_to_json(const IneqReport& rep, const InputEcho& echo);

// sweep/suite CSV:
// inequality,variant,params,lhs,lhs_stderr,rhs,rhs_stderr,ratio,verdict
std::string csv_header();
std::string csv_row(const std::string& inequality, const std::string& variant,
                    const std::string& params, const IneqReport& rep);

// write to <path>.tmp in the same directory, then rename over the target
void write_file_atomic(const std::string& path, const std::string& content);

// whole file as a string; ParseError names the path on failure
std::string read_file(const std::string& path);

}  // namespace rslab
