#include "cyqw/field.hpp"

#include <cmath>
#include <cstring>
#include <fstream>

#include "cyqw/fft.hpp"

namespace cyqw {

Field3D Field3D::make(Repr repr, const Grid2D& g2, const Grid1D& zgrid, int nzp) {
  Field3D f;
  f.repr = repr;
  f.g2 = g2;
  f.zgrid = zgrid;
  f.nzp = nzp;
  f.v.assign(static_cast<std::size_t>(g2.nx) * g2.ny * nzp, cplx(0.0, 0.0));
  return f;
}

long long Field3D::first_bad_index() const {
  for (std::size_t i = 0; i < v.size(); ++i)
    if (!std::isfinite(v[i].real()) || !std::isfinite(v[i].imag()))
      return static_cast<long long>(i);
  return -1;
}

ModeSet ModeSet::make(const Grid2D& g2, int P) {
  ModeSet m;
  m.g2 = g2;
  m.P = P;
  m.phi.assign(P, std::vector<cplx>(static_cast<std::size_t>(g2.nx) * g2.ny, cplx(0, 0)));
  return m;
}

void fourier_xy(Field3D& f, int direction) {
  fft2_batch(f.v.data(), f.g2.nx, f.g2.ny, f.nzp, direction);
}

void fourier_xy(ModeSet& m, int direction) {
  for (int p = 0; p < m.P; ++p)
    fft2_batch(m.phi[p].data(), m.g2.nx, m.g2.ny, 1, direction);
}

namespace {
constexpr std::size_t kHeader = 256;

template <typename T>
void put(std::vector<unsigned char>& h, std::size_t off, T v) {
  std::memcpy(h.data() + off, &v, sizeof(T));
}
template <typename T>
T get(const std::vector<unsigned char>& h, std::size_t off) {
  T v;
  std::memcpy(&v, h.data() + off, sizeof(T));
  return v;
}
}  // namespace

void write_field(const std::string& path, const Field3D& f) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw Error("write_field: cannot open " + path);
  std::vector<unsigned char> h(kHeader, 0);
  h[0] = 'C'; h[1] = 'Y'; h[2] = 'Q'; h[3] = 'W';
  put<std::uint16_t>(h, 4, 1);
  put<std::uint8_t>(h, 6, static_cast<std::uint8_t>(f.repr));
  put<std::uint32_t>(h, 8, f.g2.nx);
  put<std::uint32_t>(h, 12, f.g2.ny);
  put<std::uint32_t>(h, 16, f.nzp);
  put<double>(h, 24, f.g2.Lx);
  put<double>(h, 32, f.g2.Ly);
  put<double>(h, 40, f.zgrid.Lz);
  put<double>(h, 48, f.zgrid.dz);
  put<std::uint32_t>(h, 56, f.zgrid.nz);
  os.write(reinterpret_cast<const char*>(h.data()), kHeader);
  os.write(reinterpret_cast<const char*>(f.v.data()),
           static_cast<std::streamsize>(f.v.size() * sizeof(cplx)));
  if (!os) throw Error("write_field: short write to " + path);
}

Field3D read_field(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw Error("read_field: cannot open " + path);
  std::vector<unsigned char> h(kHeader);
  is.read(reinterpret_cast<char*>(h.data()), kHeader);
  if (!is || std::memcmp(h.data(), "CYQW", 4) != 0)
    throw Error("read_field: bad magic in " + path);
  if (get<std::uint16_t>(h, 4) != 1) throw Error("read_field: unsupported version");
  const auto repr = static_cast<Repr>(get<std::uint8_t>(h, 6));
  const int nx = get<std::uint32_t>(h, 8);
  const int ny = get<std::uint32_t>(h, 12);
  const int nzp = get<std::uint32_t>(h, 16);
  const double Lx = get<double>(h, 24);
  const double Ly = get<double>(h, 32);
  const double Lz = get<double>(h, 40);
  const int nz = get<std::uint32_t>(h, 56);
  Field3D f = Field3D::make(repr, Grid2D::make(Lx, Ly, nx, ny), Grid1D::make(Lz, nz), nzp);
  is.read(reinterpret_cast<char*>(f.v.data()),
          static_cast<std::streamsize>(f.v.size() * sizeof(cplx)));
  if (!is) throw Error("read_field: truncated payload in " + path);
  return f;
}

std::uint64_t field_fingerprint(const Field3D& f) {
  std::uint64_t h = fnv1a(f.v.data(), f.v.size() * sizeof(cplx));
  h = fnv1a(&f.repr, 1, h);
  return h;
}

}  // namespace cyqw
