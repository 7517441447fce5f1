#pragma once

// File formats: ternary-code text files, generator-matrix JSON, blocking-set
// JSON, and atomic text output (write to a temporary, then rename).

#include <string>

#include "trif/linear.hpp"

namespace trif {

// Text format: one word per line over '0','1','2'; lines starting with '#'
// are comments; blank lines are ignored; all words must share one length.
// Any other character, ragged lengths, or duplicate words are errors.
TernaryCode read_code_file(const std::string& path);
TernaryCode parse_code_text(const std::string& text);
std::string format_code_text(const TernaryCode& code);

// JSON {"k": int, "n": int, "rows": [[entries in {0,1,2}], ...]}.
LinearCode read_generator_file(const std::string& path);
LinearCode parse_generator_json(const std::string& text);
std::string format_generator_json(const LinearCode& G);

// JSON {"k": int, "points": [[e1,...,ek], ...], "multiplicities": [...]?};
// point entries are canonical projective representatives.
PointMultiset read_blocking_file(const std::string& path);
PointMultiset parse_blocking_json(const std::string& text);
std::string format_blocking_json(const PointMultiset& B);

std::string read_text_file(const std::string& path);

// Writes content to path via a sibling temporary file plus rename, so the
// destination never holds a partial result.
void atomic_write_text(const std::string& path, const std::string& content);

}  // namespace trif
