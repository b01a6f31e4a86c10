#include "dalnet/pattern_io.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>
#include <vector>

#include "dalnet/error.hpp"
#include "dalnet/network_io.hpp"

namespace dalnet {

namespace {

std::string trim(std::string s) {
  const auto not_space = [](unsigned char c) { return !std::isspace(c); };
  s.erase(s.begin(), std::find_if(s.begin(), s.end(), not_space));
  s.erase(std::find_if(s.rbegin(), s.rend(), not_space).base(), s.end());
  return s;
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> fields;
  std::stringstream ss(line);
  std::string field;
  while (std::getline(ss, field, ',')) fields.push_back(trim(field));
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

template <typename T>
T parse_number(const std::string& field, std::size_t line_no) {
  T value{};
  const char* end = field.data() + field.size();
  const auto [ptr, ec] = std::from_chars(field.data(), end, value);
  if (ec != std::errc() || ptr != end) {
    throw Error(Errc::ParseError, "line " + std::to_string(line_no) + ": cannot parse '" + field + "'");
  }
  return value;
}

}  // namespace

PointPattern parse_pattern_csv(const std::string& text, std::shared_ptr<const Network> net,
                               std::optional<int> mark_count) {
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  bool with_marks = false;
  std::vector<PointRecord> points;
  int max_label = 0;

  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const std::string stripped = trim(line);
    if (stripped.empty() || stripped.front() == '#') continue;
    const auto fields = split(stripped);
    if (!have_header) {
      if (fields.size() == 2 && fields[0] == "segment_id" && fields[1] == "offset") {
        with_marks = false;
      } else if (fields.size() == 3 && fields[0] == "segment_id" && fields[1] == "offset" && fields[2] == "mark") {
        with_marks = true;
      } else {
        throw Error(Errc::ParseError, "expected header 'segment_id,offset[,mark]', got '" + stripped + "'");
      }
      have_header = true;
      continue;
    }
    if (fields.size() != (with_marks ? 3u : 2u)) {
      throw Error(Errc::ParseError, "line " + std::to_string(line_no) + ": wrong number of fields");
    }
    const auto id = parse_number<SegmentId>(fields[0], line_no);
    const auto offset = parse_number<double>(fields[1], line_no);
    int label = 1;
    if (with_marks) {
      label = parse_number<int>(fields[2], line_no);
      if (label < 1) throw Error(Errc::UnknownMark, "line " + std::to_string(line_no) + ": marks start at 1");
      max_label = std::max(max_label, label);
    }
    NetworkLocation loc{net->segment_index(id), offset};
    net->check_location(loc);
    const Segment& seg = net->segment(loc.segment);
    if (offset == 0.0) {
      loc = net->allocate_vertex_point(seg.tail);
    } else if (offset == seg.length) {
      loc = net->allocate_vertex_point(seg.head);
    }
    points.push_back({loc.segment, loc.offset, label - 1});
  }
  if (!have_header) throw Error(Errc::ParseError, "pattern file has no header");

  int k = 1;
  if (with_marks) {
    k = mark_count.value_or(max_label);
    if (max_label > k) {
      throw Error(Errc::UnknownMark, "mark " + std::to_string(max_label) + " exceeds mark space of size " +
                                         std::to_string(k));
    }
  }
  return PointPattern(std::move(net), std::move(points), std::max(k, 1), with_marks);
}

PointPattern read_pattern(const std::filesystem::path& path, std::shared_ptr<const Network> net,
                          std::optional<int> mark_count) {
  return parse_pattern_csv(read_text_file(path), std::move(net), mark_count);
}

std::string pattern_to_csv(const PointPattern& pattern) {
  std::ostringstream out;
  out.precision(17);
  out << (pattern.marked() ? "segment_id,offset,mark\n" : "segment_id,offset\n");
  const Network& net = pattern.network();
  for (std::size_t s = 0; s < net.segment_count(); ++s) {
    for (const auto& p : pattern.on_segment(s)) {
      out << net.segment(s).id << ',' << p.offset;
      if (pattern.marked()) out << ',' << (p.mark + 1);
      out << '\n';
    }
  }
  return out.str();
}

void write_pattern(const PointPattern& pattern, const std::filesystem::path& path) {
  write_text_file(path, pattern_to_csv(pattern));
}

}  // namespace dalnet
