#pragma once

// JSON interchange for triples, field configurations, atlases and one-form
// coefficient lists. Complex numbers are [re, im] pairs; a bare real number
// is accepted on input as [re, 0]. Summand and patch indices are 1-based in
// files and 0-based in memory.

#include <optional>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "finspec/cech.hpp"
#include "finspec/fluctuation.hpp"
#include "finspec/lattice.hpp"

namespace finspec {

using json = nlohmann::json;

/// Malformed input file. `what()` reads "<file>:<line>:<col>: <message>" for
/// syntax errors and "<file>: <json path>: <message>" for content errors.
class ParseError : public std::runtime_error {
public:
    ParseError(std::string file, std::string location, const std::string& message);

    const std::string& file() const { return file_; }
    const std::string& location() const { return location_; }

private:
    std::string file_;
    std::string location_;
};

/// Reads and parses a JSON document. Throws ParseError with line and column
/// for syntax errors and for unreadable files.
json load_json_file(const std::string& path);
json parse_json_text(const std::string& text, const std::string& source_name);

/// Context for extracting typed values from a parsed document.
struct Reader {
    std::string file;

    [[noreturn]] void fail(const std::string& path, const std::string& message) const;
    const json& field(const json& obj, const std::string& path, const std::string& key) const;
    const json* optional_field(const json& obj, const std::string& path, const std::string& key) const;
    int integer(const json& v, const std::string& path) const;
    double real(const json& v, const std::string& path) const;
    cplx complex(const json& v, const std::string& path) const;
    Matrix matrix(const json& v, const std::string& path) const;
    std::string string(const json& v, const std::string& path) const;
};

struct TripleSpec {
    KrajewskiData data;
    std::optional<Matrix> dirac;
};

TripleSpec parse_triple(const json& doc, const std::string& file);
TripleSpec read_triple_file(const std::string& path);

/// Either "sites" (one object per site, row-major) or "uniform" (one object
/// applied to every site). Site objects have "B" (array of d matrices),
/// "Phi", "s", "weyl_sq", "euler"; missing entries are zero.
FieldConfig parse_field_config(const json& doc, const std::string& file);
FieldConfig read_field_config_file(const std::string& path);

AlgebraElement parse_algebra_element(const Reader& r, const json& v, const std::string& path,
                                     const std::vector<int>& dims);
/// {"terms": [{"a": [blocks...], "b": [blocks...]}, ...]}
OneFormTerms parse_one_form_terms(const json& doc, const std::string& file, const std::vector<int>& dims);

CechAtlas parse_atlas(const json& doc, const std::string& file);
CechAtlas read_atlas_file(const std::string& path);

json to_json(cplx z);
json to_json(const Matrix& m);
json to_json(const AlgebraElement& a);
json to_json(const KrajewskiData& data);
json to_json(const TripleSpec& spec);
json to_json(const FieldConfig& cfg);
json to_json(const CechAtlas& atlas);

}  // namespace finspec
