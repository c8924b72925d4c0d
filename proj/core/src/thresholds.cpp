#include "waveorbit/thresholds.hpp"

#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace waveorbit {

namespace {

std::string kind_name(ReferenceKind k) { return k == ReferenceKind::Q ? "Q" : "W"; }

bool key_match(const ThresholdEntry& e, const std::string& kind, int dim, double exponent,
               double beta) {
    return e.kind == kind && e.dim == dim && std::abs(e.exponent - exponent) <= 1e-12 &&
           std::abs(e.beta - beta) <= 1e-12;
}

// RAII flock on a sidecar .lock file
class FileLock {
public:
    FileLock(const std::filesystem::path& target, int op) {
        const auto lock_path = target.string() + ".lock";
        fd_ = ::open(lock_path.c_str(), O_CREAT | O_RDWR, 0644);
        if (fd_ >= 0) ::flock(fd_, op);
    }
    ~FileLock() {
        if (fd_ >= 0) {
            ::flock(fd_, LOCK_UN);
            ::close(fd_);
        }
    }

private:
    int fd_ = -1;
};

}  // namespace

ThresholdTable::ThresholdTable(std::filesystem::path csv_path) : path_(std::move(csv_path)) {
    if (std::filesystem::exists(path_)) load();
}

std::optional<ThresholdEntry> ThresholdTable::lookup(ReferenceKind kind, int dim, double exponent,
                                                     double beta) const {
    const std::string kn = kind_name(kind);
    std::optional<ThresholdEntry> best;
    for (const auto& e : entries_) {
        if (!key_match(e, kn, dim, exponent, beta)) continue;
        if (!best || e.points > best->points) best = e;
    }
    return best;
}

ThresholdEntry ThresholdTable::require(ReferenceKind kind, int dim, double exponent, double beta,
                                       double tol) {
    if (auto hit = lookup(kind, dim, exponent, beta)) return *hit;
    auto entry = compute_threshold(kind, dim, exponent,
                                   kind == ReferenceKind::W ? std::optional<double>(beta)
                                                            : std::nullopt,
                                   default_reference_grid(dim), tol);
    insert(entry);
    if (!path_.empty()) save();
    return entry;
}

void ThresholdTable::insert(const ThresholdEntry& e) { entries_.push_back(e); }

void ThresholdTable::load() {
    FileLock lock(path_, LOCK_SH);
    std::ifstream is(path_);
    if (!is) return;
    entries_.clear();
    std::string line;
    std::getline(is, line);  // header
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::istringstream ss(line);
        ThresholdEntry e;
        std::string tok;
        std::getline(ss, e.kind, ',');
        std::getline(ss, tok, ',');
        e.dim = std::stoi(tok);
        std::getline(ss, tok, ',');
        e.exponent = std::stod(tok);
        std::getline(ss, tok, ',');
        e.beta = std::stod(tok);
        std::getline(ss, tok, ',');
        e.extent = std::stod(tok);
        std::getline(ss, tok, ',');
        e.points = std::stoll(tok);
        std::getline(ss, tok, ',');
        e.mass_sq = std::stod(tok);
        std::getline(ss, tok, ',');
        e.residual = std::stod(tok);
        entries_.push_back(e);
    }
}

void ThresholdTable::save() const {
    if (path_.empty()) throw std::runtime_error("ThresholdTable::save: no backing file");
    FileLock lock(path_, LOCK_EX);
    std::ofstream os(path_, std::ios::trunc);
    if (!os) throw std::runtime_error("ThresholdTable::save: cannot open " + path_.string());
    os << "kind,N,exponent,beta,L,M,mass_sq,residual\n";
    os.precision(17);
    for (const auto& e : entries_)
        os << e.kind << ',' << e.dim << ',' << e.exponent << ',' << e.beta << ',' << e.extent
           << ',' << e.points << ',' << e.mass_sq << ',' << e.residual << '\n';
}

ThresholdEntry compute_threshold(ReferenceKind kind, int dim, double exponent,
                                 std::optional<double> beta, std::shared_ptr<const Grid> grid,
                                 double tol) {
    PetviashviliOptions opts;
    opts.tol = tol;
    auto ref = petviashvili_solve(kind, dim, exponent, beta, grid, opts);
    return ThresholdEntry{kind_name(kind), dim,           exponent,
                          beta.value_or(0.0), grid->extent(0), grid->points(0),
                          ref.mass_sq,     ref.residual};
}

RichardsonThreshold compute_threshold_richardson(ReferenceKind kind, int dim, double exponent,
                                                 std::optional<double> beta, double extent,
                                                 std::int64_t coarse_points,
                                                 std::int64_t fine_points, double tol) {
    auto coarse_grid = std::make_shared<const Grid>(make_grid(dim, extent, coarse_points));
    auto fine_grid = std::make_shared<const Grid>(make_grid(dim, extent, fine_points));
    const auto coarse = compute_threshold(kind, dim, exponent, beta, coarse_grid, tol);
    auto fine = compute_threshold(kind, dim, exponent, beta, fine_grid, tol);
    // spectral solves: assume the coarse error dominates and extrapolate
    // geometrically on the observed decrement
    const double extrap = fine.mass_sq + (fine.mass_sq - coarse.mass_sq);
    RichardsonThreshold out{fine, std::abs(extrap - fine.mass_sq)};
    out.entry.mass_sq = fine.mass_sq;
    return out;
}

}  // namespace waveorbit
