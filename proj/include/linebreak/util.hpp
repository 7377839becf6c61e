#pragma once

#include <charconv>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace lb {

/// Base class for all errors raised by this library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Input failed structural validation (bad schema, bad flag, bad value).
class ValidationError : public Error {
public:
    explicit ValidationError(const std::string& what) : Error(what) {}
};

/// Filesystem-level failure (missing file, unwritable path).
class IoError : public Error {
public:
    explicit IoError(const std::string& what) : Error(what) {}
};

class ParseError : public ValidationError {
public:
    explicit ParseError(const std::string& what) : ValidationError(what) {}
};

// ---------------------------------------------------------------------------
// Logging. Verbosity comes from the LINEBREAK_LOG environment variable
// (error|warn|info|debug); default is warn.

enum class LogLevel { Error = 0, Warn = 1, Info = 2, Debug = 3 };

LogLevel log_level();
void log(LogLevel level, const std::string& message);

inline void log_warn(const std::string& m) { log(LogLevel::Warn, m); }
inline void log_info(const std::string& m) { log(LogLevel::Info, m); }
inline void log_debug(const std::string& m) { log(LogLevel::Debug, m); }

// ---------------------------------------------------------------------------
// Deterministic RNG. Distribution sampling in the standard library is
// implementation-defined, so the generator and all samplers are fixed here to
// keep output byte-identical across platforms and standard libraries.

uint64_t splitmix64(uint64_t& state);

class Rng {
public:
    explicit Rng(uint64_t seed);

    uint64_t next_u64();
    /// Uniform in [0, 1) with 53 random mantissa bits.
    double uniform();
    double uniform(double lo, double hi);
    /// Uniform integer in [0, n).
    uint64_t uniform_int(uint64_t n);
    /// Standard normal via Box-Muller (caches the second deviate).
    double normal();
    double normal(double mean, double sigma);
    bool bernoulli(double p);
    /// Poisson by inversion; intended for small lambda.
    int poisson(double lambda);
    /// Derive an independent stream, e.g. one per match.
    Rng fork(uint64_t stream) const;

private:
    uint64_t s_[4];
    double cached_normal_ = 0.0;
    bool has_cached_normal_ = false;
};

// ---------------------------------------------------------------------------
// Parallel helpers. Work is split into ordered chunks so that any reduction
// done per-chunk-then-in-order is independent of the thread count.

/// Process-wide worker count (default: hardware concurrency).
int thread_count();
void set_thread_count(int n);

/// Runs fn(i) for i in [0, n) across threads; blocks until done.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

// ---------------------------------------------------------------------------
// Number formatting / parsing.

/// Shortest decimal form that parses back to exactly the same double.
std::string format_double(double v);
/// Fixed-point with the given number of decimals.
std::string format_fixed(double v, int decimals);
/// %.6g-style, used by the features CSV.
std::string format_sig6(double v);

void append_double(std::string& out, double v);
void append_int(std::string& out, long long v);

bool parse_double(std::string_view s, double& out);
bool parse_int(std::string_view s, long long& out);

// ---------------------------------------------------------------------------
// Small string/file helpers.

std::vector<std::string_view> split_view(std::string_view line, char sep);
std::string read_file(const std::string& path);
/// Writes to path via temp-file-then-rename so readers never see a partial file.
void write_file_atomic(const std::string& path, const std::string& content);

}  // namespace lb
