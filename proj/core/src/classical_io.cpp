#include <bit>
#include <charconv>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>

#include "xpm/classical.hpp"
#include "xpm/errors.hpp"
#include "xpm/format.hpp"

namespace xpm {

std::string format_double(double x)
{
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

void write_trajectory_csv(std::ostream& os, const std::vector<TrajectorySample>& samples)
{
    os << "t,probe_norm,signal_norm,forward_norm,backward_norm,mean_phase,phase_deviation\n";
    for (const auto& s : samples) {
        os << format_double(s.t) << ',' << format_double(s.probe_norm) << ','
           << format_double(s.signal_norm) << ',' << format_double(s.forward_norm) << ','
           << format_double(s.backward_norm) << ',' << format_double(s.mean_phase) << ','
           << format_double(s.phase_deviation) << '\n';
    }
}

namespace {

static_assert(sizeof(double) == 8);

void put_u64(std::ostream& os, std::uint64_t v)
{
    unsigned char b[8];
    for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>(v >> (8 * i));
    os.write(reinterpret_cast<const char*>(b), 8);
}

std::uint64_t get_u64(std::istream& is)
{
    unsigned char b[8];
    if (!is.read(reinterpret_cast<char*>(b), 8)) throw Error("snapshot: truncated input");
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= std::uint64_t{b[i]} << (8 * i);
    return v;
}

void put_f64(std::ostream& os, double x) { put_u64(os, std::bit_cast<std::uint64_t>(x)); }
double get_f64(std::istream& is) { return std::bit_cast<double>(get_u64(is)); }

}  // namespace

void write_snapshot(std::ostream& os, const FieldState& s)
{
    put_u64(os, s.grid.size());
    put_f64(os, s.grid.length());
    put_f64(os, s.t);
    for (const auto* field : {&s.psi_plus, &s.psi_minus, &s.psi_p})
        for (const auto& x : *field) {
            put_f64(os, x.real());
            put_f64(os, x.imag());
        }
    if (!os) throw Error("snapshot: write failed");
}

FieldState read_snapshot(std::istream& is)
{
    const auto n = get_u64(is);
    const double length = get_f64(is);
    FieldState s(Grid(static_cast<std::size_t>(n), length));
    s.t = get_f64(is);
    for (auto* field : {&s.psi_plus, &s.psi_minus, &s.psi_p})
        for (auto& x : *field) {
            const double re = get_f64(is);
            x = {re, get_f64(is)};
        }
    return s;
}

void write_snapshot_file(const std::string& path, const FieldState& s)
{
    std::ofstream os(path, std::ios::binary);
    if (!os) throw Error("snapshot: cannot open '" + path + "' for writing");
    write_snapshot(os, s);
}

FieldState read_snapshot_file(const std::string& path)
{
    std::ifstream is(path, std::ios::binary);
    if (!is) throw Error("snapshot: cannot open '" + path + "'");
    return read_snapshot(is);
}

}  // namespace xpm
