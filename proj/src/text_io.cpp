#include "stc/text_io.hpp"

#include "stc/errors.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace stc {

namespace {

void strip_cr(std::string& line) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
}

} // namespace

std::vector<Seq> read_sequences(std::istream& in, int q) {
    std::vector<Seq> out;
    std::string line;
    while (std::getline(in, line)) {
        strip_cr(line);
        if (line.empty() || line[0] == '#') continue;
        out.push_back(Seq::parse(q, line));
    }
    return out;
}

void write_sequence(std::ostream& out, const Seq& s) { out << s.str() << '\n'; }

std::vector<Trace> read_traces(std::istream& in, int q) {
    std::vector<Trace> out;
    Trace current;
    bool open = false;
    std::string line;
    while (std::getline(in, line)) {
        strip_cr(line);
        if (!line.empty() && line[0] == '#') continue;
        if (line.empty()) {
            if (open) out.push_back(std::move(current));
            current = Trace();
            open = false;
            continue;
        }
        current.add(Seq::parse(q, line));
        open = true;
    }
    if (open) out.push_back(std::move(current));
    return out;
}

void write_trace(std::ostream& out, const Trace& t) {
    for (const auto& e : t.entries()) {
        for (std::size_t k = 0; k < e.count; ++k) out << e.value.str() << '\n';
    }
    out << '\n';
}

std::string read_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot open '" + path + "' for reading");
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw IoError("cannot open '" + path + "' for writing");
    f << content;
    if (!f) throw IoError("write to '" + path + "' failed");
}

} // namespace stc
