#pragma once

#include <ostream>
#include <string>
#include <utility>

#include <json.hpp>

#include "mcrec/multcode.hpp"

namespace mcrec::io {

using nlohmann::json;

// Malformed or inconsistent file contents.
class FormatError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

struct Message {
    u64 p = 0;
    std::size_t k = 0;
    Poly f;
    bool operator==(const Message&) const = default;
};

// A received word plus the code dimension it was produced for.
struct WordFile {
    ReceivedWord word;
    std::size_t k = 0;
    bool operator==(const WordFile&) const = default;
};

struct CodewordFile {
    u64 p = 0;
    std::size_t s = 0, k = 0;
    std::vector<Elem> points;
    Codeword cw;
    bool operator==(const CodewordFile&) const = default;
};

// {"p", "k", "coeffs"}
json to_json(const Message& m);
Message message_from_json(const json& j);

// {"p", "n", "s", "k", "ell", "points": [{"alpha", "options"}]}
json to_json(const WordFile& w);
WordFile word_from_json(const json& j);

// {"p", "n", "s", "k", "points", "symbols"}
json to_json(const CodewordFile& c);
CodewordFile codeword_from_json(const json& j);

// "-" reads standard input / writes standard output.
json read_json(const std::string& path);
void write_text(const std::string& path, const std::string& text, std::ostream& console);

}  // namespace mcrec::io
