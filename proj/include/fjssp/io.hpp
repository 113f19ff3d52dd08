#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "fjssp/model.hpp"

namespace fjssp {

// Text formats
//
// Plain FJSSP (machine ids 1-based in the file):
//   n m [avg]                        header; optional third value is parsed
//                                    and discarded
//   n_i  m_i1 (k T)... m_i2 (k T)... one row per job
//
// Worker variant (machine and worker ids 0-based in the file):
//   n m w
//   n_i  m_ij  mach wcount (wid T)...(wid T)  mach wcount ...
//
// Writers emit the canonical form: single spaces, one job per line,
// newline-terminated, no optional header value. parse(write(x)) == x and
// write(parse(t)) is a byte fixed point.

enum class InstanceFormat { fjssp, fjssp_w, automatic };

struct RawInstanceText {
    std::string path;  // used in diagnostics only
    std::string body;
    InstanceFormat hint = InstanceFormat::automatic;
    bool lenient = false;  // tolerate surplus trailing tokens instead of failing
};

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& path, int line, int token, const std::string& message);
    int line() const { return line_; }
    int token() const { return token_; }

private:
    int line_ = 0;
    int token_ = 0;
};

Instance parse_fjssp(const RawInstanceText& text);
WorkerInstance parse_fjsspw(const RawInstanceText& text);

/// Resolves InstanceFormat::automatic: a two-token header (or a fractional
/// third token) is plain FJSSP; a strict three-integer header is tried as
/// the worker format first, falling back to plain when the row shape does
/// not fit.
Instance parse_instance(const RawInstanceText& text);

std::string write_fjssp(const Instance& instance);
std::string write_fjsspw(const WorkerInstance& instance);
std::string write_instance(const Instance& instance);

struct CatalogEntry {
    std::string id;      // source/<relative file path>
    std::string source;  // first-level subdirectory name
    Instance instance;
    Characteristics ch;
};

struct CatalogDiagnostic {
    std::string path;
    std::string message;
};

struct Catalog {
    std::vector<CatalogEntry> entries;
    std::vector<CatalogDiagnostic> diagnostics;

    const CatalogEntry* find(const std::string& id) const;
    std::vector<CatalogRow> rows() const;
};

/// Walks root/<source>/** in sorted path order, parsing every regular file
/// with format auto-detection. Files that fail to parse become diagnostics,
/// not errors; a missing root directory throws.
Catalog load_catalog(const std::filesystem::path& root,
                     ComboPoolRule rule = ComboPoolRule::occurring_pairs);

}  // namespace fjssp
