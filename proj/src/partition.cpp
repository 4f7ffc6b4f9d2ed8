#include "qident/partition.hpp"

#include "qident/errors.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

namespace qident {

Partition::Partition(std::initializer_list<long> parts) : Partition(std::vector<long>(parts)) {}

Partition::Partition(std::vector<long> parts) : parts_(std::move(parts))
{
    for (std::size_t i = 0; i < parts_.size(); ++i) {
        if (parts_[i] < 0 || (i + 1 < parts_.size() && parts_[i] < parts_[i + 1])) {
            Partition bad;
            bad.parts_ = parts_;
            throw NotAPartition(bad.str() + " is not weakly decreasing and non-negative");
        }
    }
    while (!parts_.empty() && parts_.back() == 0) parts_.pop_back();
}

std::vector<long> Partition::padded(std::size_t n) const
{
    std::vector<long> v(std::max(n, parts_.size()), 0);
    std::copy(parts_.begin(), parts_.end(), v.begin());
    return v;
}

std::string Partition::str() const
{
    std::ostringstream os;
    os << '[';
    for (std::size_t i = 0; i < parts_.size(); ++i) os << (i ? "," : "") << parts_[i];
    os << ']';
    return os.str();
}

Partition Partition::parse(std::string_view s)
{
    auto fail = [&] { return ConfigError("malformed partition \"" + std::string(s) + "\""); };
    auto trim = [](std::string_view v) {
        while (!v.empty() && v.front() == ' ') v.remove_prefix(1);
        while (!v.empty() && v.back() == ' ') v.remove_suffix(1);
        return v;
    };
    s = trim(s);
    if (s.size() < 2 || s.front() != '[' || s.back() != ']') throw fail();
    std::string_view body = trim(s.substr(1, s.size() - 2));
    std::vector<long> parts;
    while (!body.empty()) {
        auto comma = body.find(',');
        std::string_view tok = trim(body.substr(0, comma));
        long v = 0;
        auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
        if (ec != std::errc() || ptr != tok.data() + tok.size() || tok.empty()) throw fail();
        parts.push_back(v);
        if (comma == std::string_view::npos) break;
        body.remove_prefix(comma + 1);
        if (trim(body).empty()) throw fail();
    }
    return Partition(std::move(parts));
}

long weight(const Partition& l)
{
    long w = 0;
    for (long p : l.parts()) w += p;
    return w;
}

long nstat(const Partition& l)
{
    long s = 0;
    for (std::size_t i = 0; i < l.length(); ++i) s += static_cast<long>(i) * l[i];
    return s;
}

bool contains(const Partition& l, const Partition& m)
{
    for (std::size_t i = 0; i < m.length(); ++i)
        if (m[i] > l[i]) return false;
    return true;
}

bool is_horizontal_strip(const Partition& l, const Partition& m)
{
    const std::size_t n = std::max(l.length(), m.length());
    for (std::size_t i = 0; i < n; ++i)
        if (!(l[i] >= m[i] && m[i] >= l[i + 1])) return false;
    return true;
}

namespace {

// Odometer over box lo[i] <= v[i] <= hi[i], first coordinate fastest,
// keeping only weakly decreasing vectors.
std::vector<Partition> enumerate_box(const std::vector<long>& lo, const std::vector<long>& hi)
{
    std::vector<Partition> out;
    const std::size_t n = lo.size();
    std::vector<long> v = lo;
    for (;;) {
        if (std::is_sorted(v.rbegin(), v.rend())) out.emplace_back(v);
        std::size_t i = 0;
        while (i < n && v[i] == hi[i]) v[i] = lo[i], ++i;
        if (i == n) break;
        ++v[i];
    }
    return out;
}

} // namespace

std::vector<Partition> horizontal_strip_predecessors(const Partition& l)
{
    const std::size_t n = l.length();
    std::vector<long> lo(n), hi(n);
    for (std::size_t i = 0; i < n; ++i) lo[i] = l[i + 1], hi[i] = l[i];
    return enumerate_box(lo, hi);
}

std::vector<Partition> subpartitions(const Partition& l)
{
    return enumerate_box(std::vector<long>(l.length(), 0), l.parts());
}

IntVector staircase(long n)
{
    if (n < 1) throw DomainError("staircase requires n >= 1");
    IntVector v(static_cast<std::size_t>(n));
    for (long i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] = n - 1 - i;
    return v;
}

std::vector<IntVector> lattice_window(const IntVector& upper, const IntVector& lower)
{
    if (upper.size() != lower.size()) throw DomainError("lattice_window: dimension mismatch");
    for (std::size_t i = 0; i < upper.size(); ++i)
        if (lower[i] > upper[i])
            throw EmptyWindow("lattice_window: lower " + to_string(lower) + " exceeds upper " + to_string(upper));
    std::vector<IntVector> out;
    const std::size_t n = upper.size();
    IntVector v = lower;
    for (;;) {
        out.push_back(v);
        std::size_t i = n;
        while (i > 0 && v[i - 1] == upper[i - 1]) v[i - 1] = lower[i - 1], --i;
        if (i == 0) break;
        ++v[i - 1];
    }
    return out;
}

long weight(const IntVector& v)
{
    long w = 0;
    for (long x : v) w += x;
    return w;
}

long nstat(const IntVector& v)
{
    long s = 0;
    for (std::size_t i = 0; i < v.size(); ++i) s += static_cast<long>(i) * v[i];
    return s;
}

std::string to_string(const IntVector& v)
{
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
    os << ')';
    return os.str();
}

} // namespace qident
