#pragma once

// Integer partitions and integer vectors: containment, horizontal strips,
// statistics, enumeration and lattice windows.

#include <compare>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace qident {

using IntVector = std::vector<long>;

// Weakly decreasing, non-negative; stored without trailing zeros so that
// (2,1) == (2,1,0). Indexing past the stored parts yields 0.
class Partition {
public:
    Partition() = default;
    Partition(std::initializer_list<long> parts);
    explicit Partition(std::vector<long> parts);

    long operator[](std::size_t i) const { return i < parts_.size() ? parts_[i] : 0; }
    std::size_t length() const { return parts_.size(); }
    bool empty() const { return parts_.empty(); }
    const std::vector<long>& parts() const { return parts_; }

    // Parts padded with zeros to exactly n entries (n >= length()).
    std::vector<long> padded(std::size_t n) const;

    std::string str() const;                    // "[3,1]", "[]"
    static Partition parse(std::string_view s); // inverse of str()

    friend bool operator==(const Partition&, const Partition&) = default;
    friend auto operator<=>(const Partition& a, const Partition& b) { return a.parts_ <=> b.parts_; }

private:
    std::vector<long> parts_;
};

long weight(const Partition& l);
long nstat(const Partition& l); // sum (i-1) l_i
bool contains(const Partition& l, const Partition& m);
bool is_horizontal_strip(const Partition& l, const Partition& m);

// Enumeration order: colexicographic on padded parts (last part slowest),
// e.g. subpartitions([2,1]) = [], [1], [2], [1,1], [2,1].
std::vector<Partition> horizontal_strip_predecessors(const Partition& l);
std::vector<Partition> subpartitions(const Partition& l);

IntVector staircase(long n); // (n-1, ..., 1, 0)

// All integer vectors between lower and upper (inclusive), odometer order
// with the last coordinate fastest.
std::vector<IntVector> lattice_window(const IntVector& upper, const IntVector& lower);

long weight(const IntVector& v);
long nstat(const IntVector& v);

std::string to_string(const IntVector& v);

} // namespace qident
