#include "tonality/io.h"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <istream>
#include <iterator>
#include <sstream>

#include <json.hpp>

#include "tonality/error.h"

namespace tonality {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

JsonlRecord parse_record(const std::string& line, std::size_t line_no) {
  json j = json::parse(line);  // throws json::parse_error
  if (!j.is_object()) throw ArgumentError("record is not a JSON object");
  JsonlRecord rec;
  rec.line = line_no;
  auto id = j.find("id");
  if (id == j.end() || !(id->is_string() || id->is_number_integer())) {
    throw ArgumentError("record needs a string \"id\"");
  }
  rec.doc.id = id->is_string() ? id->get<std::string>() : id->dump();
  auto text = j.find("text");
  if (text == j.end() || !text->is_string()) throw ArgumentError("record needs a string \"text\"");
  rec.doc.text = text->get<std::string>();
  tokenize(rec.doc.text);  // reject invalid UTF-8 up front
  if (auto ts = j.find("timestamp"); ts != j.end() && !ts->is_null()) {
    if (!ts->is_string()) throw ArgumentError("\"timestamp\" must be a string");
    rec.doc.timestamp = parse_rfc3339(ts->get<std::string>());
  }
  if (auto gold = j.find("gold"); gold != j.end() && !gold->is_null()) {
    if (!gold->is_string()) throw ArgumentError("\"gold\" must be a string");
    rec.gold = gold->get<std::string>();
  }
  return rec;
}

}  // namespace

std::vector<JsonlRecord> read_jsonl(std::istream& in,
                                    const std::function<void(const RecordError&)>& on_error) {
  std::vector<JsonlRecord> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (std::all_of(line.begin(), line.end(), [](char c) { return c == ' ' || c == '\t'; })) continue;
    try {
      out.push_back(parse_record(line, line_no));
    } catch (const std::exception& e) {
      on_error(RecordError{line_no, e.what()});
    }
  }
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "'");
  std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (in.bad()) throw IoError("failed reading '" + path + "'");
  return bytes;
}

std::vector<DocumentRecord> read_corpus(const std::string& path) {
  std::error_code ec;
  if (!fs::exists(path, ec)) throw IoError("no such file or directory: '" + path + "'");
  std::vector<DocumentRecord> docs;
  if (fs::is_directory(path, ec)) {
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(path)) {
      if (entry.is_regular_file()) files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());
    for (const auto& file : files) {
      DocumentRecord doc{file.filename().string(), std::nullopt, read_file(file.string())};
      try {
        tokenize(doc.text);
      } catch (const DecodingError& e) {
        throw ArgumentError(file.string() + ": " + e.what());
      }
      docs.push_back(std::move(doc));
    }
    return docs;
  }
  std::istringstream in(read_file(path));
  auto records = read_jsonl(in, [&](const RecordError& e) {
    throw ArgumentError(path + ":" + std::to_string(e.line) + ": " + e.message);
  });
  for (auto& r : records) docs.push_back(std::move(r.doc));
  return docs;
}

}  // namespace tonality
