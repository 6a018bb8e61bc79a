#pragma once
// Line-oriented text formats.
//
// Sequence file: one sequence per line. Trace file: one fragment per line, a
// blank line terminates a trace. Lines starting with '#' are header/comment
// lines and are skipped on read.

#include "stc/seqcore.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace stc {

std::vector<Seq> read_sequences(std::istream& in, int q);
void write_sequence(std::ostream& out, const Seq& s);

std::vector<Trace> read_traces(std::istream& in, int q);
void write_trace(std::ostream& out, const Trace& t);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

} // namespace stc
