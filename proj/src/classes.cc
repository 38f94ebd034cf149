#include "sbmc/classes.h"

#include <algorithm>
#include <array>
#include <bit>
#include <numeric>

#include "sbmc/error.h"

namespace sbmc {
namespace {

constexpr Vertex kMaxCanonicalVertices = 8;
constexpr std::uint16_t kUnassigned = 0xffff;

// For each vertex permutation, where each code bit moves to.
struct PermutationTable {
  std::size_t bits = 0;
  std::vector<std::uint8_t> moves;  // permutations x pairs -> code bit

  explicit PermutationTable(Vertex n) : bits(pair_count(n)) {
    std::vector<Vertex> perm(n);
    std::iota(perm.begin(), perm.end(), Vertex{0});
    do {
      for (Vertex i = 0; i < n; ++i) {
        for (Vertex j = i + 1; j < n; ++j) {
          Vertex a = perm[i];
          Vertex b = perm[j];
          if (a > b) std::swap(a, b);
          moves.push_back(static_cast<std::uint8_t>(
              bits - 1 - pair_index(n, a, b)));
        }
      }
    } while (std::next_permutation(perm.begin(), perm.end()));
  }

  std::size_t count() const { return bits == 0 ? 1 : moves.size() / bits; }

  PairCode apply(std::size_t perm, PairCode code) const {
    const std::uint8_t* row = moves.data() + perm * bits;
    PairCode image = 0;
    while (code != 0) {
      const int bit = std::countr_zero(code);
      code &= code - 1;
      // bit b corresponds to pair p = bits-1-b.
      image |= PairCode{1} << row[bits - 1 - bit];
    }
    return image;
  }
};

void check_cap(Vertex n, Vertex cap, const char* what) {
  if (n > cap || n > kMaxCanonicalVertices) {
    throw Error(ErrorKind::kCapExceeded,
                std::string(what) + ": n = " + std::to_string(n) +
                    " exceeds the exact-enumeration cap of " +
                    std::to_string(std::min(cap, kMaxCanonicalVertices)));
  }
}

struct Enumeration {
  std::vector<CanonicalClass> classes;
  std::vector<std::uint16_t> lookup;  // empty unless requested
};

// Scans codes in ascending order. The first unvisited code met in an orbit is
// the orbit minimum, hence the canonical code.
Enumeration enumerate(Vertex n, bool with_lookup) {
  const std::size_t bits = pair_count(n);
  const std::uint64_t total = std::uint64_t{1} << bits;
  const PermutationTable table(n);

  Enumeration out;
  std::vector<std::uint64_t> visited((total + 63) / 64, 0);
  if (with_lookup) out.lookup.assign(total, kUnassigned);

  auto mark = [&](PairCode code) {
    std::uint64_t& word = visited[code >> 6];
    const std::uint64_t bit = std::uint64_t{1} << (code & 63);
    if (word & bit) return false;
    word |= bit;
    return true;
  };

  for (PairCode code = 0; code < total; ++code) {
    if (visited[code >> 6] >> (code & 63) & 1) continue;
    const std::size_t id = out.classes.size();
    std::uint64_t size = 0;
    for (std::size_t p = 0; p < table.count(); ++p) {
      const PairCode image = table.apply(p, code);
      if (mark(image)) {
        ++size;
        if (with_lookup) out.lookup[image] = static_cast<std::uint16_t>(id);
      }
    }
    CanonicalClass cls;
    cls.code = code;
    cls.class_size = size;
    cls.index = id;
    out.classes.push_back(std::move(cls));
  }

  // Order by edge count, then canonical code.
  std::vector<std::size_t> order(out.classes.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const auto& ca = out.classes[a];
    const auto& cb = out.classes[b];
    const int ea = std::popcount(ca.code);
    const int eb = std::popcount(cb.code);
    return ea != eb ? ea < eb : ca.code < cb.code;
  });
  std::vector<CanonicalClass> sorted;
  sorted.reserve(order.size());
  std::vector<std::uint16_t> rename(order.size());
  for (std::size_t rank = 0; rank < order.size(); ++rank) {
    CanonicalClass cls = out.classes[order[rank]];
    rename[cls.index] = static_cast<std::uint16_t>(rank);
    cls.index = rank;
    cls.representative = decode(n, cls.code);
    sorted.push_back(std::move(cls));
  }
  out.classes = std::move(sorted);
  for (auto& id : out.lookup) id = rename[id];
  return out;
}

}  // namespace

std::vector<CanonicalClass> enumerate_classes(Vertex n, Vertex cap) {
  check_cap(n, cap, "enumerate_classes");
  return enumerate(n, /*with_lookup=*/false).classes;
}

PairCode canonical_code(const Graph& g) {
  check_cap(g.n(), kMaxCanonicalVertices, "canonical_code");
  const PermutationTable table(g.n());
  const PairCode code = encode(g);
  PairCode best = code;
  for (std::size_t p = 0; p < table.count(); ++p) {
    best = std::min(best, table.apply(p, code));
  }
  return best;
}

ClassCatalog ClassCatalog::build(Vertex n, Vertex cap) {
  check_cap(n, std::min(cap, kDefaultEnumerationCap), "ClassCatalog::build");
  Enumeration e = enumerate(n, /*with_lookup=*/true);
  ClassCatalog catalog;
  catalog.n_ = n;
  catalog.classes_ = std::move(e.classes);
  catalog.lookup_ = std::move(e.lookup);
  return catalog;
}

std::size_t ClassCatalog::class_of(const Graph& g) const {
  if (g.n() != n_) {
    throw Error(ErrorKind::kSizeMismatch,
                "class_of: graph has n = " + std::to_string(g.n()) +
                    ", catalog has n = " + std::to_string(n_));
  }
  return lookup_[encode(g)];
}

}  // namespace sbmc
