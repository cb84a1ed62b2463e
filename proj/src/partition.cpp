#include "strata_scope/partition.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>

#include "strata_scope/errors.hpp"

namespace strata_scope {

std::vector<int> mask_elements(Mask m) {
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(mask_size(m)));
  while (m != 0) {
    out.push_back(lowest_element(m));
    m &= m - 1;
  }
  return out;
}

namespace {

void check_ground_size(int n) {
  if (n < 1 || n > kMaxGroundSize) {
    throw std::invalid_argument("ground size must be in 1.." + std::to_string(kMaxGroundSize) +
                                ", got " + std::to_string(n));
  }
}

void check_same_ground(const SetPartition& a, const SetPartition& b) {
  if (a.ground_size() != b.ground_size()) {
    throw std::invalid_argument("ground-size mismatch: " + std::to_string(a.ground_size()) +
                                " vs " + std::to_string(b.ground_size()));
  }
}

void sort_blocks(std::vector<Mask>& blocks) {
  std::sort(blocks.begin(), blocks.end(),
            [](Mask x, Mask y) { return std::countr_zero(x) < std::countr_zero(y); });
}

}  // namespace

SetPartition SetPartition::from_blocks(int n, std::vector<Mask> blocks) {
  check_ground_size(n);
  Mask seen = 0;
  for (Mask b : blocks) {
    if (b == 0) throw std::invalid_argument("empty block");
    if (!is_subset(b, full_mask(n))) throw std::invalid_argument("block element out of range");
    if ((seen & b) != 0) throw std::invalid_argument("blocks are not disjoint");
    seen |= b;
  }
  if (seen != full_mask(n)) throw std::invalid_argument("blocks do not cover the ground set");
  sort_blocks(blocks);
  return SetPartition(n, std::move(blocks));
}

SetPartition SetPartition::bottom(int n) {
  check_ground_size(n);
  return SetPartition(n, {full_mask(n)});
}

SetPartition SetPartition::top(int n) {
  check_ground_size(n);
  std::vector<Mask> blocks;
  blocks.reserve(static_cast<std::size_t>(n));
  for (int i = 1; i <= n; ++i) blocks.push_back(element_bit(i));
  return SetPartition(n, std::move(blocks));
}

bool SetPartition::has_block(Mask block) const noexcept {
  return std::find(blocks_.begin(), blocks_.end(), block) != blocks_.end();
}

Mask SetPartition::block_of(int element) const {
  const Mask bit = element_bit(element);
  for (Mask b : blocks_) {
    if ((b & bit) != 0) return b;
  }
  throw std::out_of_range("element " + std::to_string(element) + " not in ground set");
}

std::strong_ordering operator<=>(const SetPartition& a, const SetPartition& b) {
  if (auto c = a.n_ <=> b.n_; c != 0) return c;
  return std::lexicographical_compare_three_way(a.blocks_.begin(), a.blocks_.end(),
                                                b.blocks_.begin(), b.blocks_.end());
}

std::size_t SetPartitionHash::operator()(const SetPartition& p) const noexcept {
  std::size_t h = static_cast<std::size_t>(p.ground_size()) * 0x9e3779b97f4a7c15ULL;
  for (Mask b : p.blocks()) {
    h ^= std::hash<Mask>{}(b) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return h;
}

// ---------------------------------------------------------------------------
// Text grammar

std::string format_block(Mask block, int n) {
  std::string out;
  bool first = true;
  for (int e : mask_elements(block)) {
    if (!first && n > 9) out.push_back(',');
    out += std::to_string(e);
    first = false;
  }
  return out;
}

std::string format_partition(const SetPartition& p) {
  std::string out;
  for (std::size_t i = 0; i < p.block_count(); ++i) {
    if (i > 0) out.push_back('|');
    out += format_block(p.blocks()[i], p.ground_size());
  }
  return out;
}

namespace {

// Parses one block token starting at `offset` in the original text. Elements
// already claimed by earlier blocks are in `seen`.
Mask parse_block_token(std::string_view token, std::size_t offset, int n, Mask& seen) {
  if (token.empty()) throw ParseError("empty block", offset);
  Mask block = 0;
  auto add = [&](int value, std::size_t pos) {
    if (value < 1 || value > n) {
      throw ParseError("element " + std::to_string(value) + " out of range 1.." + std::to_string(n),
                       pos);
    }
    const Mask bit = element_bit(value);
    if ((seen & bit) != 0) throw ParseError("duplicate element " + std::to_string(value), pos);
    seen |= bit;
    block |= bit;
  };
  auto parse_number = [&](std::string_view piece, std::size_t pos) {
    if (piece.empty()) throw ParseError("malformed token: empty element", pos);
    for (std::size_t k = 0; k < piece.size(); ++k) {
      if (!std::isdigit(static_cast<unsigned char>(piece[k]))) {
        throw ParseError(std::string("malformed token: unexpected character '") + piece[k] + "'",
                         pos + k);
      }
    }
    int value = 0;
    auto [ptr, ec] = std::from_chars(piece.data(), piece.data() + piece.size(), value);
    if (ec != std::errc{} || ptr != piece.data() + piece.size()) {
      throw ParseError("malformed token: number too large", pos);
    }
    add(value, pos);
  };

  if (token.find(',') != std::string_view::npos) {
    std::size_t start = 0;
    while (true) {
      const std::size_t comma = token.find(',', start);
      const std::size_t end = comma == std::string_view::npos ? token.size() : comma;
      parse_number(token.substr(start, end - start), offset + start);
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
  } else if (n <= 9) {
    for (std::size_t k = 0; k < token.size(); ++k) {
      const char c = token[k];
      if (!std::isdigit(static_cast<unsigned char>(c))) {
        throw ParseError(std::string("malformed token: unexpected character '") + c + "'",
                         offset + k);
      }
      add(c - '0', offset + k);
    }
  } else {
    parse_number(token, offset);
  }
  return block;
}

std::pair<std::string_view, std::size_t> trim(std::string_view text) {
  std::size_t begin = 0;
  std::size_t end = text.size();
  while (begin < end && std::isspace(static_cast<unsigned char>(text[begin]))) ++begin;
  while (end > begin && std::isspace(static_cast<unsigned char>(text[end - 1]))) --end;
  return {text.substr(begin, end - begin), begin};
}

}  // namespace

Mask parse_block(std::string_view text, int n) {
  check_ground_size(n);
  auto [body, offset] = trim(text);
  Mask seen = 0;
  return parse_block_token(body, offset, n, seen);
}

SetPartition parse_partition(std::string_view text, int n) {
  check_ground_size(n);
  auto [body, offset] = trim(text);
  if (body.empty()) throw ParseError("empty partition text", offset);
  std::vector<Mask> blocks;
  Mask seen = 0;
  std::size_t start = 0;
  while (true) {
    const std::size_t bar = body.find('|', start);
    const std::size_t end = bar == std::string_view::npos ? body.size() : bar;
    blocks.push_back(parse_block_token(body.substr(start, end - start), offset + start, n, seen));
    if (bar == std::string_view::npos) break;
    start = bar + 1;
  }
  if (seen != full_mask(n)) {
    const int missing = lowest_element(full_mask(n) & ~seen);
    throw ParseError("missing element " + std::to_string(missing), offset + body.size());
  }
  return SetPartition::from_blocks(n, std::move(blocks));
}

// ---------------------------------------------------------------------------
// Order and lattice operations

bool leq(const SetPartition& a, const SetPartition& b) {
  check_same_ground(a, b);
  for (Mask fine : b.blocks()) {
    const Mask probe = fine & (~fine + 1);
    bool inside = false;
    for (Mask coarse : a.blocks()) {
      if ((coarse & probe) != 0) {
        inside = is_subset(fine, coarse);
        break;
      }
    }
    if (!inside) return false;
  }
  return true;
}

bool less(const SetPartition& a, const SetPartition& b) {
  return a.block_count() < b.block_count() && leq(a, b);
}

SetPartition meet(const SetPartition& a, const SetPartition& b) {
  check_same_ground(a, b);
  std::vector<Mask> merged(a.blocks().begin(), a.blocks().end());
  for (Mask link : b.blocks()) {
    Mask component = 0;
    std::vector<Mask> rest;
    rest.reserve(merged.size());
    for (Mask m : merged) {
      if ((m & link) != 0) {
        component |= m;
      } else {
        rest.push_back(m);
      }
    }
    rest.push_back(component);
    merged = std::move(rest);
  }
  return SetPartition::from_blocks(a.ground_size(), std::move(merged));
}

SetPartition join(const SetPartition& a, const SetPartition& b) {
  check_same_ground(a, b);
  std::vector<Mask> pieces;
  for (Mask x : a.blocks()) {
    for (Mask y : b.blocks()) {
      if ((x & y) != 0) pieces.push_back(x & y);
    }
  }
  return SetPartition::from_blocks(a.ground_size(), std::move(pieces));
}

// ---------------------------------------------------------------------------
// Enumeration

namespace {

void check_cap(int n, int cap, EnumerationLimits limits, const char* what) {
  check_ground_size(n);
  if (n > cap && !limits.force) {
    throw CapExceeded(std::string(what) + " enumeration for n = " + std::to_string(n) +
                      " exceeds the default cap n <= " + std::to_string(cap) +
                      "; pass the force flag to override");
  }
}

// Restricted growth strings with exactly `k` distinct labels.
void partitions_with_blocks(int n, int k, std::vector<Mask>& scratch, int element, int used,
                            const std::function<void()>& emit) {
  if (n - element + 1 < k - used) return;  // not enough elements left to open blocks
  if (element > n) {
    if (used == k) emit();
    return;
  }
  const Mask bit = element_bit(element);
  for (int b = 0; b < used; ++b) {
    scratch[static_cast<std::size_t>(b)] |= bit;
    partitions_with_blocks(n, k, scratch, element + 1, used, emit);
    scratch[static_cast<std::size_t>(b)] &= ~bit;
  }
  if (used < k) {
    scratch[static_cast<std::size_t>(used)] = bit;
    partitions_with_blocks(n, k, scratch, element + 1, used + 1, emit);
    scratch[static_cast<std::size_t>(used)] = 0;
  }
}

}  // namespace

void for_each_partition(int n, const std::function<void(const SetPartition&)>& visit,
                        EnumerationLimits limits) {
  check_cap(n, kPartitionCap, limits, "partition");
  for (int k = 1; k <= n; ++k) {
    std::vector<std::pair<std::string, SetPartition>> level;
    std::vector<Mask> scratch(static_cast<std::size_t>(k), 0);
    partitions_with_blocks(n, k, scratch, 1, 0, [&] {
      auto p = SetPartition::from_blocks(n, scratch);
      std::string text = format_partition(p);
      level.emplace_back(std::move(text), std::move(p));
    });
    std::sort(level.begin(), level.end(),
              [](const auto& x, const auto& y) { return x.first < y.first; });
    for (const auto& entry : level) visit(entry.second);
  }
}

std::vector<SetPartition> enumerate_partitions(int n, EnumerationLimits limits) {
  std::vector<SetPartition> out;
  for_each_partition(n, [&](const SetPartition& p) { out.push_back(p); }, limits);
  return out;
}

bool Chain::contains(const SetPartition& p) const {
  return std::find(elements.begin(), elements.end(), p) != elements.end();
}

bool is_strict_chain(std::span<const SetPartition> elements) {
  for (std::size_t i = 1; i < elements.size(); ++i) {
    if (elements[i].ground_size() != elements[0].ground_size()) return false;
    if (!less(elements[i - 1], elements[i])) return false;
  }
  return true;
}

std::string format_chain(const Chain& chain) {
  std::string out;
  for (std::size_t i = 0; i < chain.elements.size(); ++i) {
    if (i > 0) out += " < ";
    out += format_partition(chain.elements[i]);
  }
  return out.empty() ? "{}" : out;
}

PartitionLattice::PartitionLattice(int n, EnumerationLimits limits)
    : n_(n), elements_(enumerate_partitions(n, limits)) {
  above_.resize(elements_.size());
  index_.reserve(elements_.size());
  for (std::size_t i = 0; i < elements_.size(); ++i) {
    index_.emplace(elements_[i], static_cast<std::uint32_t>(i));
  }
  for (std::size_t i = 0; i < elements_.size(); ++i) {
    // Strict refinements have more blocks, hence a larger index.
    for (std::size_t j = i + 1; j < elements_.size(); ++j) {
      if (elements_[j].block_count() > elements_[i].block_count() &&
          leq(elements_[i], elements_[j])) {
        above_[i].push_back(static_cast<std::uint32_t>(j));
      }
    }
  }
}

std::size_t PartitionLattice::index_of(const SetPartition& p) const {
  auto it = index_.find(p);
  if (it == index_.end()) throw std::invalid_argument("partition not in lattice");
  return it->second;
}

void PartitionLattice::for_each_chain_from(
    std::vector<std::uint32_t>& prefix,
    const std::function<void(std::span<const std::uint32_t>)>& visit) const {
  visit(prefix);
  if (prefix.empty()) return;
  for (std::uint32_t next : above_[prefix.back()]) {
    prefix.push_back(next);
    for_each_chain_from(prefix, visit);
    prefix.pop_back();
  }
}

Chain PartitionLattice::to_chain(std::span<const std::uint32_t> indices) const {
  Chain chain{n_, {}};
  chain.elements.reserve(indices.size());
  for (std::uint32_t i : indices) chain.elements.push_back(elements_[i]);
  return chain;
}

void for_each_chain(int n, ChainOptions options, const std::function<void(const Chain&)>& visit,
                    EnumerationLimits limits) {
  check_cap(n, kChainCap, limits, "chain");
  const PartitionLattice lattice(n, EnumerationLimits{true});
  auto emit = [&](std::span<const std::uint32_t> indices) {
    if (options.require_bottom && indices.size() == 1 && !options.allow_empty) return;
    visit(lattice.to_chain(indices));
  };
  if (options.require_bottom) {
    std::vector<std::uint32_t> prefix{0};
    lattice.for_each_chain_from(prefix, emit);
    return;
  }
  if (options.allow_empty) visit(Chain{n, {}});
  for (std::uint32_t start = 0; start < lattice.size(); ++start) {
    std::vector<std::uint32_t> prefix{start};
    lattice.for_each_chain_from(prefix, emit);
  }
}

std::vector<Chain> enumerate_chains(int n, ChainOptions options, EnumerationLimits limits) {
  std::vector<Chain> out;
  for_each_chain(n, options, [&](const Chain& c) { out.push_back(c); }, limits);
  return out;
}

// ---------------------------------------------------------------------------
// Extension by one point

SetPartition adjoin_singleton(const SetPartition& rho) {
  const int n = rho.ground_size();
  if (n + 1 > kMaxGroundSize) throw std::invalid_argument("ground size limit reached");
  std::vector<Mask> blocks(rho.blocks().begin(), rho.blocks().end());
  blocks.push_back(element_bit(n + 1));
  return SetPartition::from_blocks(n + 1, std::move(blocks));
}

std::variant<SetPartition, BlockPointer> classify_extension(const SetPartition& extended) {
  const int n = extended.ground_size() - 1;
  if (n < 1) throw std::invalid_argument("classify_extension needs ground size >= 2");
  const Mask last = element_bit(n + 1);
  std::vector<Mask> blocks;
  Mask pointed = 0;
  bool singleton = false;
  for (Mask b : extended.blocks()) {
    if ((b & last) == 0) {
      blocks.push_back(b);
    } else if (b == last) {
      singleton = true;
    } else {
      pointed = b & ~last;
      blocks.push_back(pointed);
    }
  }
  auto rho = SetPartition::from_blocks(n, std::move(blocks));
  if (singleton) return rho;
  return BlockPointer{std::move(rho), pointed};
}

SetPartition extend_into_block(const BlockPointer& pointer) {
  const int n = pointer.partition.ground_size();
  if (!pointer.partition.has_block(pointer.block)) {
    throw std::invalid_argument("block pointer does not name a block of its partition");
  }
  if (n + 1 > kMaxGroundSize) throw std::invalid_argument("ground size limit reached");
  std::vector<Mask> blocks;
  for (Mask b : pointer.partition.blocks()) {
    blocks.push_back(b == pointer.block ? (b | element_bit(n + 1)) : b);
  }
  return SetPartition::from_blocks(n + 1, std::move(blocks));
}

}  // namespace strata_scope
