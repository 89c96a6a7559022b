#pragma once

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "tonality/document.h"

namespace tonality {

// A JSON-lines record: {"id": ..., "timestamp"?: ..., "text": ..., "gold"?: ...}.
struct JsonlRecord {
  DocumentRecord doc;
  std::optional<std::string> gold;
  std::size_t line = 0;
};

struct RecordError {
  std::size_t line = 0;
  std::string message;
};

/// Reads one record per non-blank line. Malformed lines are reported through
/// `on_error` and skipped; the remaining lines are still returned.
std::vector<JsonlRecord> read_jsonl(std::istream& in,
                                    const std::function<void(const RecordError&)>& on_error);

/// Loads a labelled corpus: a directory contributes one document per regular
/// file (sorted by name, id = file name); any other path is read as JSON lines
/// and a malformed line is an error. Throws IoError if the path is missing.
std::vector<DocumentRecord> read_corpus(const std::string& path);

std::string read_file(const std::string& path);

}  // namespace tonality
