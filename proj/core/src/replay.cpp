#include "p3o/replay.hpp"

#include <cmath>
#include <cstring>
#include <fstream>

#include "p3o/error.hpp"

namespace p3o {

namespace {

constexpr char kMagic[8] = {'P', '3', 'O', 'R', 'B', 'U', 'F', '\0'};
constexpr std::uint32_t kFormatVersion = 1;

void check_snapshot(const Transition& t) {
  const double lp = log_prob(t.behavior.distribution, t.action);
  if (std::abs(lp - t.behavior.log_prob_action) > 1e-9) {
    throw InputError("ReplayBuffer: snapshot log-prob inconsistent with its distribution");
  }
}

// --- little binary writer/reader helpers -----------------------------------

void put_u64(std::ostream& os, std::uint64_t v) {
  unsigned char b[8];
  for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>((v >> (8 * i)) & 0xff);
  os.write(reinterpret_cast<const char*>(b), 8);
}

void put_u32(std::ostream& os, std::uint32_t v) {
  unsigned char b[4];
  for (int i = 0; i < 4; ++i) b[i] = static_cast<unsigned char>((v >> (8 * i)) & 0xff);
  os.write(reinterpret_cast<const char*>(b), 4);
}

void put_u8(std::ostream& os, std::uint8_t v) {
  os.write(reinterpret_cast<const char*>(&v), 1);
}

void put_f64(std::ostream& os, double v) {
  std::uint64_t bits;
  std::memcpy(&bits, &v, 8);
  put_u64(os, bits);
}

void put_vec(std::ostream& os, const std::vector<double>& v) {
  put_u64(os, v.size());
  for (double x : v) put_f64(os, x);
}

std::uint64_t get_u64(std::istream& is) {
  unsigned char b[8];
  is.read(reinterpret_cast<char*>(b), 8);
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(b[i]) << (8 * i);
  return v;
}

std::uint32_t get_u32(std::istream& is) {
  unsigned char b[4];
  is.read(reinterpret_cast<char*>(b), 4);
  std::uint32_t v = 0;
  for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(b[i]) << (8 * i);
  return v;
}

std::uint8_t get_u8(std::istream& is) {
  char c;
  is.read(&c, 1);
  return static_cast<std::uint8_t>(c);
}

double get_f64(std::istream& is) {
  const std::uint64_t bits = get_u64(is);
  double v;
  std::memcpy(&v, &bits, 8);
  return v;
}

std::vector<double> get_vec(std::istream& is) {
  const std::uint64_t n = get_u64(is);
  std::vector<double> v(n);
  for (auto& x : v) x = get_f64(is);
  return v;
}

void put_distribution(std::ostream& os, const ActionDistribution& d) {
  put_u8(os, d.is_categorical() ? 0 : 1);
  if (d.is_categorical()) {
    put_vec(os, d.probs());
  } else {
    put_vec(os, d.mean());
    put_vec(os, d.std_dev());
  }
}

ActionDistribution get_distribution(std::istream& is) {
  const std::uint8_t kind = get_u8(is);
  if (kind == 0) {
    auto d = ActionDistribution::categorical(get_vec(is));
    d.apply_storage_floor();
    return d;
  }
  auto mean = get_vec(is);
  auto std = get_vec(is);
  return ActionDistribution::gaussian(std::move(mean), std::move(std));
}

void put_transition(std::ostream& os, const Transition& t) {
  put_vec(os, t.state);
  if (const int* a = std::get_if<int>(&t.action)) {
    put_u8(os, 0);
    put_u64(os, static_cast<std::uint64_t>(*a));
  } else {
    put_u8(os, 1);
    put_vec(os, std::get<std::vector<double>>(t.action));
  }
  put_f64(os, t.reward);
  put_vec(os, t.next_state);
  put_u8(os, t.terminal ? 1 : 0);
  put_u8(os, t.truncated ? 1 : 0);
  put_distribution(os, t.behavior.distribution);
  put_f64(os, t.behavior.log_prob_action);
  put_f64(os, t.collected_return);
}

Transition get_transition(std::istream& is) {
  Transition t;
  t.state = get_vec(is);
  if (get_u8(is) == 0) {
    t.action = static_cast<int>(get_u64(is));
  } else {
    t.action = get_vec(is);
  }
  t.reward = get_f64(is);
  t.next_state = get_vec(is);
  t.terminal = get_u8(is) != 0;
  t.truncated = get_u8(is) != 0;
  t.behavior.distribution = get_distribution(is);
  t.behavior.log_prob_action = get_f64(is);
  t.collected_return = get_f64(is);
  return t;
}

}  // namespace

ReplayBuffer::ReplayBuffer(std::uint64_t capacity_transitions) : capacity_(capacity_transitions) {
  if (capacity_ == 0) throw ConfigError("ReplayBuffer: capacity must be positive");
}

void ReplayBuffer::append(Segment segment) {
  if (segment.empty()) throw InputError("ReplayBuffer: empty segment");
  if (segment.size() > capacity_) {
    throw InputError("ReplayBuffer: segment larger than buffer capacity");
  }
  for (const Transition& t : segment) check_snapshot(t);

  size_transitions_ += segment.size();
  total_stored_ += segment.size();
  segments_.push_back(std::move(segment));
  while (size_transitions_ > capacity_) {
    size_transitions_ -= segments_.front().size();
    segments_.pop_front();
  }
}

MiniBatch ReplayBuffer::sample_minibatch(std::size_t n_segments, RngStream& rng) const {
  if (segments_.empty()) throw StateError("ReplayBuffer: sampling from an empty buffer");
  if (n_segments == 0) throw InputError("ReplayBuffer: n_segments must be positive");
  MiniBatch batch;
  batch.reserve(n_segments);
  for (std::size_t i = 0; i < n_segments; ++i) {
    batch.push_back(segments_[rng.uniform_below(segments_.size())]);
  }
  return batch;
}

void ReplayBuffer::dump(const std::string& path) const {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw InputError("ReplayBuffer::dump: cannot open " + path);
  os.write(kMagic, sizeof(kMagic));
  put_u32(os, kFormatVersion);
  put_u64(os, capacity_);
  put_u64(os, total_stored_);
  put_u64(os, segments_.size());
  for (const Segment& seg : segments_) {
    put_u64(os, seg.size());
    for (const Transition& t : seg) put_transition(os, t);
  }
  if (!os) throw InputError("ReplayBuffer::dump: write failed for " + path);
}

ReplayBuffer ReplayBuffer::restore(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw InputError("ReplayBuffer::restore: cannot open " + path);
  char magic[8];
  is.read(magic, sizeof(magic));
  if (!is || std::memcmp(magic, kMagic, sizeof(kMagic)) != 0) {
    throw InputError("ReplayBuffer::restore: bad magic in " + path);
  }
  const std::uint32_t version = get_u32(is);
  if (version != kFormatVersion) {
    throw InputError("ReplayBuffer::restore: unsupported format version " +
                     std::to_string(version));
  }
  ReplayBuffer buffer(get_u64(is));
  buffer.total_stored_ = get_u64(is);
  const std::uint64_t n_segments = get_u64(is);
  for (std::uint64_t i = 0; i < n_segments; ++i) {
    const std::uint64_t n = get_u64(is);
    Segment seg;
    seg.reserve(n);
    for (std::uint64_t k = 0; k < n; ++k) seg.push_back(get_transition(is));
    buffer.size_transitions_ += seg.size();
    buffer.segments_.push_back(std::move(seg));
  }
  if (!is) throw InputError("ReplayBuffer::restore: truncated file " + path);
  return buffer;
}

}  // namespace p3o
