#include "antistoch/graph.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <random>

#include "antistoch/error.hpp"

namespace antistoch {

namespace {

constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

std::uint64_t splitmix64(std::uint64_t x) noexcept {
  std::uint64_t z = x + kGolden;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Serves fair bits LSB-first from successive 64-bit generator outputs.
class BitStream {
 public:
  explicit BitStream(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t take(unsigned count) {
    if (count == 0) return 0;
    std::uint64_t out;
    if (available_ >= count) {
      out = buffer_ & low_mask(count);
      buffer_ = count == 64 ? 0 : buffer_ >> count;
      available_ -= count;
      return out;
    }
    out = buffer_;
    const unsigned have = available_;
    const unsigned need = count - have;
    const std::uint64_t fresh = engine_();
    out |= (fresh & low_mask(need)) << have;
    buffer_ = need == 64 ? 0 : fresh >> need;
    available_ = 64 - need;
    return out;
  }

 private:
  static std::uint64_t low_mask(unsigned k) noexcept { return k >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << k) - 1; }

  std::mt19937_64 engine_;
  std::uint64_t buffer_ = 0;
  unsigned available_ = 0;
};

int hex_value(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

}  // namespace

EdgeSlot EdgeSlot::of(std::size_t a, std::size_t b) {
  if (a == 0 || b == 0) throw InputError("vertex ids are 1-based");
  if (a == b) throw InputError("edge slot needs two distinct vertices");
  return a < b ? EdgeSlot{a, b} : EdgeSlot{b, a};
}

std::size_t slot_index(std::size_t n, EdgeSlot e) noexcept { return (e.u - 1) * (2 * n - e.u) / 2 + (e.v - e.u); }

EdgeSlot slot_at(std::size_t n, std::size_t index) {
  if (index == 0 || index > pair_count(n)) throw InputError("slot index out of range");
  std::size_t u = 1;
  std::size_t remaining = index;
  while (remaining > n - u) {
    remaining -= n - u;
    ++u;
  }
  return EdgeSlot{u, u + remaining};
}

std::uint64_t mix_seed(SeedSpec s) noexcept { return splitmix64(splitmix64(s.seed) ^ splitmix64(s.stream + kGolden)); }

Graph::Graph(std::size_t n) : n_(n), stride_((n + 63) / 64), bits_(n * ((n + 63) / 64), 0) {}

void Graph::check_vertex(std::size_t v) const {
  if (v == 0 || v > n_) throw InputError("vertex " + std::to_string(v) + " outside 1.." + std::to_string(n_));
}

bool Graph::adjacent(std::size_t u, std::size_t v) const {
  check_vertex(u);
  check_vertex(v);
  return adjacent_unchecked(u, v);
}

void Graph::set_edge(std::size_t u, std::size_t v, bool present) {
  check_vertex(u);
  check_vertex(v);
  if (u == v) throw InputError("self loops are not allowed");
  const std::uint64_t mu = std::uint64_t{1} << ((v - 1) & 63);
  const std::uint64_t mv = std::uint64_t{1} << ((u - 1) & 63);
  auto& a = bits_[(u - 1) * stride_ + ((v - 1) >> 6)];
  auto& b = bits_[(v - 1) * stride_ + ((u - 1) >> 6)];
  if (present) {
    a |= mu;
    b |= mv;
  } else {
    a &= ~mu;
    b &= ~mv;
  }
}

void Graph::toggle(EdgeSlot e) {
  check_vertex(e.u);
  check_vertex(e.v);
  if (e.u == e.v) throw InputError("self loops are not allowed");
  bits_[(e.u - 1) * stride_ + ((e.v - 1) >> 6)] ^= std::uint64_t{1} << ((e.v - 1) & 63);
  bits_[(e.v - 1) * stride_ + ((e.u - 1) >> 6)] ^= std::uint64_t{1} << ((e.u - 1) & 63);
}

std::size_t Graph::degree(std::size_t v) const {
  check_vertex(v);
  std::size_t d = 0;
  for (auto w : row(v)) d += static_cast<std::size_t>(std::popcount(w));
  return d;
}

std::vector<std::size_t> Graph::degrees() const {
  std::vector<std::size_t> out(n_);
  for (std::size_t v = 1; v <= n_; ++v) {
    std::size_t d = 0;
    for (auto w : row(v)) d += static_cast<std::size_t>(std::popcount(w));
    out[v - 1] = d;
  }
  return out;
}

std::size_t Graph::edge_count() const {
  std::size_t total = 0;
  for (auto w : bits_) total += static_cast<std::size_t>(std::popcount(w));
  return total / 2;
}

std::size_t VertexMask::count_in(std::span<const std::uint64_t> row) const noexcept {
  std::size_t c = 0;
  for (std::size_t i = 0; i < words_.size(); ++i) c += static_cast<std::size_t>(std::popcount(row[i] & words_[i]));
  return c;
}

Graph random_graph(std::size_t n, SeedSpec s) {
  if (n == 0) throw InputError("random_graph needs n >= 1");
  Graph g(n);
  if (n == 1) return g;
  BitStream stream(mix_seed(s));
  for (std::size_t u = 1; u < n; ++u) {
    auto row = g.mutable_row(u);
    // Row u receives the bits of slots (u, u+1..n); 0-based column p = v-1.
    std::size_t p = u;
    while (p < n) {
      const unsigned offset = static_cast<unsigned>(p & 63);
      const unsigned len = static_cast<unsigned>(std::min<std::size_t>(64 - offset, n - p));
      row[p >> 6] |= stream.take(len) << offset;
      p += len;
    }
  }
  // Mirror the upper triangle.
  for (std::size_t u = 1; u < n; ++u) {
    const auto row = g.row(u);
    const std::size_t ucol_word = (u - 1) >> 6;
    const std::uint64_t ubit = std::uint64_t{1} << ((u - 1) & 63);
    for (std::size_t wi = (u >> 6); wi < row.size(); ++wi) {
      std::uint64_t bits = row[wi];
      if (wi == (u >> 6)) bits &= ~std::uint64_t{0} << (u & 63);
      while (bits != 0) {
        const std::size_t v = wi * 64 + static_cast<std::size_t>(std::countr_zero(bits)) + 1;
        g.mutable_row(v)[ucol_word] |= ubit;
        bits &= bits - 1;
      }
    }
  }
  return g;
}

Graph flip(const Graph& g, EdgeSlot e) {
  Graph out = g;
  out.toggle(e);
  return out;
}

Graph induced(const Graph& g, std::span<const std::size_t> vertices) {
  std::vector<std::size_t> sorted(vertices.begin(), vertices.end());
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw InputError("induced: duplicate vertex ids");
  }
  if (!sorted.empty() && (sorted.front() == 0 || sorted.back() > g.order())) {
    throw InputError("induced: vertex id out of range");
  }
  return decode_word(sorted.size(), encode_sequence(g, sorted));
}

void check_permutation(std::span<const std::size_t> perm, std::size_t n) {
  if (perm.size() != n) throw InputError("permutation has wrong size");
  std::vector<bool> seen(n + 1, false);
  for (auto x : perm) {
    if (x == 0 || x > n || seen[x]) throw InputError("map is not a bijection on 1..n");
    seen[x] = true;
  }
}

Graph permute(const Graph& g, std::span<const std::size_t> perm) {
  const std::size_t n = g.order();
  check_permutation(perm, n);
  Graph out(n);
  for (std::size_t u = 1; u <= n; ++u) {
    const auto row = g.row(u);
    auto dst = out.mutable_row(perm[u - 1]);
    for (std::size_t wi = 0; wi < row.size(); ++wi) {
      std::uint64_t bits = row[wi];
      while (bits != 0) {
        const std::size_t v = wi * 64 + static_cast<std::size_t>(std::countr_zero(bits)) + 1;
        const std::size_t pv = perm[v - 1];
        dst[(pv - 1) >> 6] |= std::uint64_t{1} << ((pv - 1) & 63);
        bits &= bits - 1;
      }
    }
  }
  return out;
}

Word encode_sequence(const Graph& g, std::span<const std::size_t> vertices) {
  const std::size_t m = vertices.size();
  std::vector<bool> seen(g.order() + 1, false);
  for (auto v : vertices) {
    if (v == 0 || v > g.order() || seen[v]) throw InputError("encode_sequence needs distinct vertices in 1..n");
    seen[v] = true;
  }
  Word w(pair_count(m));
  std::size_t t = 0;
  for (std::size_t i = 0; i < m; ++i) {
    const std::size_t a = vertices[i];
    for (std::size_t j = i + 1; j < m; ++j) {
      ++t;
      if (g.adjacent_unchecked(a, vertices[j])) w.set_unchecked(t);
    }
  }
  return w;
}

Word encode_word(const Graph& g, std::span<const std::size_t> order) {
  check_permutation(order, g.order());
  return encode_sequence(g, order);
}

Graph decode_word(std::size_t n, const Word& w) {
  if (w.length() != pair_count(n)) {
    throw InputError("word length " + std::to_string(w.length()) + " does not match n(n-1)/2 for n=" +
                     std::to_string(n));
  }
  Graph g(n);
  std::size_t t = 0;
  for (std::size_t u = 1; u <= n; ++u) {
    for (std::size_t v = u + 1; v <= n; ++v) {
      ++t;
      if (w.test_unchecked(t)) g.set_edge(u, v, true);
    }
  }
  return g;
}

std::vector<std::uint64_t> iterated_degree_signature(const Graph& g, unsigned depth) {
  if (depth > kMaxSignatureDepth) throw InputError("signature depth is limited to 8");
  const std::size_t n = g.order();
  std::vector<std::uint64_t> current(n, 0);
  std::vector<std::uint64_t> next(n);
  std::vector<std::uint64_t> children;
  for (unsigned level = 0; level < depth; ++level) {
    for (std::size_t x = 1; x <= n; ++x) {
      children.clear();
      const auto row = g.row(x);
      for (std::size_t wi = 0; wi < row.size(); ++wi) {
        std::uint64_t bits = row[wi];
        while (bits != 0) {
          children.push_back(current[wi * 64 + static_cast<std::size_t>(std::countr_zero(bits))]);
          bits &= bits - 1;
        }
      }
      std::sort(children.begin(), children.end());
      std::uint64_t h = splitmix64(children.size() ^ 0x5bd1e995ULL);
      for (auto c : children) h = splitmix64(h ^ splitmix64(c));
      next[x - 1] = h;
    }
    current.swap(next);
  }
  return current;
}

std::string serialize(const Graph& g) {
  static constexpr char kHex[] = "0123456789abcdef";
  const std::size_t n = g.order();
  const std::size_t bytes = (pair_count(n) + 7) / 8;
  std::vector<unsigned char> payload(bytes, 0);
  std::size_t t = 0;
  for (std::size_t u = 1; u <= n; ++u) {
    for (std::size_t v = u + 1; v <= n; ++v) {
      if (g.adjacent_unchecked(u, v)) payload[t / 8] |= static_cast<unsigned char>(0x80u >> (t % 8));
      ++t;
    }
  }
  std::string out = "n=" + std::to_string(n) + "\n";
  out.reserve(out.size() + 2 * bytes + 1);
  for (auto b : payload) {
    out.push_back(kHex[b >> 4]);
    out.push_back(kHex[b & 0xf]);
  }
  out.push_back('\n');
  return out;
}

Graph parse(std::string_view text) {
  const auto nl = text.find('\n');
  if (nl == std::string_view::npos) throw FormatError("ASGRAPH: missing header line");
  const std::string_view header = text.substr(0, nl);
  if (header.size() < 3 || header.substr(0, 2) != "n=") throw FormatError("ASGRAPH: header must be n=<decimal>");
  std::size_t n = 0;
  const auto digits = header.substr(2);
  const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), n);
  if (ec != std::errc{} || ptr != digits.data() + digits.size()) throw FormatError("ASGRAPH: bad vertex count");

  std::string_view payload = text.substr(nl + 1);
  if (!payload.empty() && payload.back() == '\n') payload.remove_suffix(1);
  if (payload.find('\n') != std::string_view::npos) throw FormatError("ASGRAPH: trailing content after payload");

  const std::size_t slots = pair_count(n);
  const std::size_t bytes = (slots + 7) / 8;
  if (payload.size() != 2 * bytes) {
    throw FormatError("ASGRAPH: payload has " + std::to_string(payload.size()) + " hex digits, expected " +
                      std::to_string(2 * bytes));
  }
  Graph g(n);
  std::vector<unsigned char> raw(bytes);
  for (std::size_t i = 0; i < bytes; ++i) {
    const int hi = hex_value(payload[2 * i]);
    const int lo = hex_value(payload[2 * i + 1]);
    if (hi < 0 || lo < 0) throw FormatError("ASGRAPH: non-hex character in payload");
    raw[i] = static_cast<unsigned char>((hi << 4) | lo);
  }
  if (slots % 8 != 0 && (raw.back() & (0xffu >> (slots % 8))) != 0) {
    throw FormatError("ASGRAPH: nonzero padding bits");
  }
  std::size_t t = 0;
  for (std::size_t u = 1; u <= n; ++u) {
    for (std::size_t v = u + 1; v <= n; ++v) {
      if ((raw[t / 8] >> (7 - t % 8)) & 1u) g.set_edge(u, v, true);
      ++t;
    }
  }
  return g;
}

}  // namespace antistoch
