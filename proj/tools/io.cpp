#include "io.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

namespace mcrec::io {

namespace {

const json& field(const json& j, const char* key)
{
    if (!j.is_object()) throw FormatError("expected a JSON object");
    auto it = j.find(key);
    if (it == j.end()) throw FormatError(std::string("missing field \"") + key + "\"");
    return *it;
}

u64 as_u64(const json& j, const char* what)
{
    if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<std::int64_t>() >= 0))
        throw FormatError(std::string(what) + " must be a non-negative integer");
    return j.get<u64>();
}

u64 get_u64(const json& j, const char* key) { return as_u64(field(j, key), key); }

std::vector<Elem> elems(const json& j, const char* what, u64 p)
{
    if (!j.is_array()) throw FormatError(std::string(what) + " must be an array");
    std::vector<Elem> out;
    for (const auto& e : j) {
        u64 v = as_u64(e, what);
        if (v >= p) throw FormatError(std::string(what) + " entries must be below p");
        out.push_back(v);
    }
    return out;
}

}  // namespace

json to_json(const Message& m) { return {{"p", m.p}, {"k", m.k}, {"coeffs", m.f.coeffs()}}; }

Message message_from_json(const json& j)
{
    Message m;
    m.p = get_u64(j, "p");
    m.k = get_u64(j, "k");
    m.f = Poly(elems(field(j, "coeffs"), "coeffs", m.p));
    return m;
}

json to_json(const WordFile& w)
{
    json pts = json::array();
    for (const auto& c : w.word.coords) pts.push_back({{"alpha", c.alpha}, {"options", c.options}});
    return {{"p", w.word.p}, {"n", w.word.n()}, {"s", w.word.s}, {"k", w.k}, {"ell", w.word.ell}, {"points", pts}};
}

WordFile word_from_json(const json& j)
{
    WordFile w;
    w.word.p = get_u64(j, "p");
    w.word.s = get_u64(j, "s");
    w.word.ell = get_u64(j, "ell");
    w.k = get_u64(j, "k");
    const std::size_t n = get_u64(j, "n");
    const json& pts = field(j, "points");
    if (!pts.is_array()) throw FormatError("points must be an array");
    for (const auto& c : pts) {
        ReceivedCoordinate rc;
        rc.alpha = get_u64(c, "alpha");
        const json& opts = field(c, "options");
        if (!opts.is_array()) throw FormatError("options must be an array");
        for (const auto& o : opts) rc.options.push_back(elems(o, "option", w.word.p));
        w.word.coords.push_back(std::move(rc));
    }
    if (w.word.n() != n) throw FormatError("n does not match the number of points");
    try {
        w.word.validate();
    } catch (const ParamError& e) {
        throw FormatError(e.what());
    }
    return w;
}

json to_json(const CodewordFile& c)
{
    return {{"p", c.p},           {"n", c.points.size()}, {"s", c.s}, {"k", c.k}, {"points", c.points},
            {"symbols", c.cw.symbols}};
}

CodewordFile codeword_from_json(const json& j)
{
    CodewordFile c;
    c.p = get_u64(j, "p");
    c.s = get_u64(j, "s");
    c.k = get_u64(j, "k");
    const std::size_t n = get_u64(j, "n");
    c.points = elems(field(j, "points"), "points", c.p);
    const json& syms = field(j, "symbols");
    if (!syms.is_array()) throw FormatError("symbols must be an array");
    for (const auto& s : syms) {
        c.cw.symbols.push_back(elems(s, "symbol", c.p));
        if (c.cw.symbols.back().size() != c.s) throw FormatError("symbol length must equal s");
    }
    if (c.points.size() != n || c.cw.symbols.size() != n) throw FormatError("n does not match points and symbols");
    return c;
}

json read_json(const std::string& path)
{
    std::stringstream buf;
    if (path == "-") {
        buf << std::cin.rdbuf();
    } else {
        std::ifstream in(path);
        if (!in) throw FormatError("cannot open " + path);
        buf << in.rdbuf();
    }
    try {
        return json::parse(buf.str());
    } catch (const json::parse_error& e) {
        throw FormatError(std::string("invalid JSON: ") + e.what());
    }
}

void write_text(const std::string& path, const std::string& text, std::ostream& console)
{
    if (path.empty() || path == "-") {
        console << text;
        return;
    }
    std::ofstream out(path);
    if (!out) throw FormatError("cannot write " + path);
    out << text;
}

}  // namespace mcrec::io
