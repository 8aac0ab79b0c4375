#pragma once

#include <stdexcept>
#include <string>

namespace sfl {

enum class errc {
    domain,
    pole,
    strip,
    singularity,
    divergence,
    unsupported_dimension,
    recurrent,
    polar_points,
    config,
};

inline const char* errc_name(errc c) {
    switch (c) {
    case errc::domain: return "domain";
    case errc::pole: return "pole";
    case errc::strip: return "strip";
    case errc::singularity: return "singularity";
    case errc::divergence: return "divergence";
    case errc::unsupported_dimension: return "unsupported_dimension";
    case errc::recurrent: return "recurrent";
    case errc::polar_points: return "polar_points";
    case errc::config: return "config";
    }
    return "unknown";
}

// Every library failure goes through this one type so callers (the CLI in
// particular) can map it to a stable machine-readable code.
class error : public std::domain_error {
public:
    error(errc c, const std::string& what) : std::domain_error(what), code_(c) {}
    errc code() const noexcept { return code_; }

private:
    errc code_;
};

[[noreturn]] inline void fail(errc c, const std::string& what) { throw error(c, what); }

inline void require(bool ok, errc c, const std::string& what) {
    if (!ok) fail(c, what);
}

} // namespace sfl
