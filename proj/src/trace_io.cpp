#include "atugv/trace_io.hpp"

#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>

namespace atugv {

std::string format_number(double value) {
    std::ostringstream out;
    out.precision(9);
    out << value;
    return out.str();
}

void write_trajectory_csv(std::ostream& out, const SimulationTrace& trace) {
    out << kTrajectoryHeader << '\n';
    for (const TraceStep& s : trace.steps) {
        const std::string t = format_number(s.time);
        for (std::size_t k = 0; k < s.actual.size(); ++k) {
            out << t << ',' << k + 1 << ',' << format_number(s.desired[k].x) << ','
                << format_number(s.desired[k].y) << ',' << format_number(s.actual[k].x) << ','
                << format_number(s.actual[k].y) << ',';
            if (s.commanded[k]) {
                out << format_number(s.commanded[k]->x) << ',' << format_number(s.commanded[k]->y);
            } else {
                out << ',';
            }
            out << ',' << format_number(s.error_norm[k]) << '\n';
        }
    }
}

void write_elbow_csv(std::ostream& out, const SimulationTrace& trace) {
    out << kElbowHeader << '\n';
    for (const TraceStep& s : trace.steps) {
        const std::string t = format_number(s.time);
        for (std::size_t k = 0; k < trace.joints.size(); ++k) {
            out << t << ',' << trace.joints[k].cell << ',' << trace.joints[k].neighbor << ','
                << format_number(s.elbow_desired[k]) << ',' << format_number(s.elbow_actual[k]) << '\n';
        }
    }
}

namespace {

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> fields;
    std::size_t start = 0;
    for (;;) {
        const std::size_t comma = line.find(',', start);
        fields.push_back(line.substr(start, comma - start));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return fields;
}

double field_number(const std::string& s, int line) {
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size()) throw ParseError(line, "bad number '" + s + "'");
    return v;
}

int field_id(const std::string& s, int line) {
    int v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size()) throw ParseError(line, "bad cell id '" + s + "'");
    return v;
}

template <typename Row, typename Parse>
std::vector<Row> read_csv(std::istream& in, const char* header, std::size_t columns, Parse parse) {
    std::string line;
    if (!std::getline(in, line) || line != header) throw ParseError(1, std::string("expected header '") + header + "'");
    std::vector<Row> rows;
    int line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        const auto f = split_fields(line);
        if (f.size() != columns) throw ParseError(line_no, "expected " + std::to_string(columns) + " fields");
        rows.push_back(parse(f, line_no));
    }
    return rows;
}

}  // namespace

std::vector<TrajectoryRow> read_trajectory_csv(std::istream& in) {
    return read_csv<TrajectoryRow>(in, kTrajectoryHeader, 9, [](const auto& f, int n) {
        TrajectoryRow r;
        r.t = field_number(f[0], n);
        r.cell = field_id(f[1], n);
        r.desired = {field_number(f[2], n), field_number(f[3], n)};
        r.actual = {field_number(f[4], n), field_number(f[5], n)};
        if (!f[6].empty() || !f[7].empty()) r.commanded = Vec2{field_number(f[6], n), field_number(f[7], n)};
        r.error_norm = field_number(f[8], n);
        return r;
    });
}

std::vector<ElbowRow> read_elbow_csv(std::istream& in) {
    return read_csv<ElbowRow>(in, kElbowHeader, 5, [](const auto& f, int n) {
        return ElbowRow{field_number(f[0], n), field_id(f[1], n), field_id(f[2], n), field_number(f[3], n),
                        field_number(f[4], n)};
    });
}

}  // namespace atugv
