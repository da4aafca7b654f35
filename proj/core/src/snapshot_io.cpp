#include "rotgp/snapshot_io.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <iterator>
#include <sstream>

#include "rotgp/errors.hpp"

namespace rotgp {
namespace {

static_assert(std::endian::native == std::endian::little, "snapshot I/O assumes a little-endian host");

constexpr char kMagic[8] = {'R', 'O', 'T', 'G', 'P', 'S', 'N', 'P'};

class Writer {
 public:
  template <class T>
  void put(T v) {
    char buf[sizeof(T)];
    std::memcpy(buf, &v, sizeof(T));
    out_.append(buf, sizeof(T));
  }
  void put(const ScalarField& f) { out_.append(reinterpret_cast<const char*>(f.data()), f.size() * sizeof(double)); }
  void put(const ComplexField& f) { out_.append(reinterpret_cast<const char*>(f.data()), f.size() * sizeof(cplx)); }
  void raw(const char* p, std::size_t n) { out_.append(p, n); }
  std::string take() { return std::move(out_); }

 private:
  std::string out_;
};

class Reader {
 public:
  explicit Reader(const std::string& in) : in_(in) {}
  template <class T>
  T get() {
    T v;
    std::memcpy(&v, take(sizeof(T)), sizeof(T));
    return v;
  }
  void fill(ScalarField& f) { std::memcpy(f.data(), take(f.size() * sizeof(double)), f.size() * sizeof(double)); }
  void fill(ComplexField& f) { std::memcpy(f.data(), take(f.size() * sizeof(cplx)), f.size() * sizeof(cplx)); }
  const char* take(std::size_t n) {
    if (in_.size() - pos_ < n) throw FormatError("snapshot size mismatch: file is truncated");
    const char* p = in_.data() + pos_;
    pos_ += n;
    return p;
  }
  bool done() const { return pos_ == in_.size(); }

 private:
  const std::string& in_;
  std::size_t pos_ = 0;
};

struct KindOf {
  SnapshotKind operator()(const ScalarField&) const { return SnapshotKind::scalar; }
  SnapshotKind operator()(const VectorField&) const { return SnapshotKind::vector; }
  SnapshotKind operator()(const ComplexField&) const { return SnapshotKind::complex; }
  SnapshotKind operator()(const WavePair&) const { return SnapshotKind::wave_pair; }
  SnapshotKind operator()(const HydroState&) const { return SnapshotKind::hydro; }
};

const GridPtr& grid_of(const Snapshot& s) {
  return std::visit(
      [](const auto& v) -> const GridPtr& {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, HydroState>)
          return v.rho_hat.grid();
        else
          return v.grid();
      },
      s);
}

}  // namespace

std::string encode_snapshot(const Snapshot& snapshot) {
  const GridPtr& grid = grid_of(snapshot);
  if (!grid) throw FormatError("cannot encode an empty field");
  Writer w;
  w.raw(kMagic, sizeof kMagic);
  w.put(kSnapshotVersion);
  w.put(grid->length());
  w.put(static_cast<std::uint32_t>(grid->size()));
  w.put(static_cast<std::uint32_t>(std::visit(KindOf{}, snapshot)));
  std::visit(
      [&w](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, ScalarField> || std::is_same_v<T, ComplexField>) {
          w.put(v);
        } else if constexpr (std::is_same_v<T, VectorField>) {
          w.put(v.x);
          w.put(v.y);
        } else if constexpr (std::is_same_v<T, WavePair>) {
          w.put(static_cast<std::uint32_t>(v.frame == Frame::psi ? 0 : 1));
          w.put(v.time);
          w.put(v.carrier.x);
          w.put(v.carrier.y);
          w.put(v.component[0]);
          w.put(v.component[1]);
        } else {
          w.put(v.time);
          w.put(v.rho_hat);
          w.put(v.u_hat.x);
          w.put(v.u_hat.y);
        }
      },
      snapshot);
  return w.take();
}

Snapshot decode_snapshot(const std::string& bytes, const GridPtr& grid_hint) {
  Reader r(bytes);
  if (std::memcmp(r.take(sizeof kMagic), kMagic, sizeof kMagic) != 0) throw FormatError("not a snapshot file");
  const auto version = r.get<std::uint32_t>();
  if (version != kSnapshotVersion) throw FormatError("unsupported snapshot version " + std::to_string(version));
  const auto length = r.get<double>();
  const auto size = r.get<std::uint32_t>();
  const auto tag = r.get<std::uint32_t>();

  GridPtr grid = grid_hint;
  if (!grid || grid->length() != length || grid->size() != static_cast<int>(size))
    grid = make_grid(length, static_cast<int>(size));

  auto expect_end = [&r] {
    if (!r.done()) throw FormatError("snapshot size mismatch: trailing bytes");
  };
  switch (static_cast<SnapshotKind>(tag)) {
    case SnapshotKind::scalar: {
      ScalarField f(grid);
      r.fill(f);
      expect_end();
      return f;
    }
    case SnapshotKind::complex: {
      ComplexField f(grid);
      r.fill(f);
      expect_end();
      return f;
    }
    case SnapshotKind::vector: {
      VectorField f(grid);
      r.fill(f.x);
      r.fill(f.y);
      expect_end();
      return f;
    }
    case SnapshotKind::wave_pair: {
      WavePair p;
      const auto frame = r.get<std::uint32_t>();
      if (frame > 1) throw FormatError("unknown frame tag in snapshot");
      p.frame = frame == 0 ? Frame::psi : Frame::phi;
      p.time = r.get<double>();
      p.carrier.x = r.get<double>();
      p.carrier.y = r.get<double>();
      p.component = {ComplexField(grid), ComplexField(grid)};
      r.fill(p.component[0]);
      r.fill(p.component[1]);
      expect_end();
      return p;
    }
    case SnapshotKind::hydro: {
      HydroState h{0.0, ScalarField(grid), VectorField(grid)};
      h.time = r.get<double>();
      r.fill(h.rho_hat);
      r.fill(h.u_hat.x);
      r.fill(h.u_hat.y);
      expect_end();
      return h;
    }
  }
  throw FormatError("unknown snapshot kind " + std::to_string(tag));
}

void write_snapshot(const Snapshot& snapshot, const std::filesystem::path& path) {
  const std::string bytes = encode_snapshot(snapshot);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw FormatError("cannot open " + path.string() + " for writing");
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw FormatError("failed writing " + path.string());
}

Snapshot read_snapshot(const std::filesystem::path& path, const GridPtr& grid) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open " + path.string());
  const std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return decode_snapshot(bytes, grid);
}

}  // namespace rotgp
