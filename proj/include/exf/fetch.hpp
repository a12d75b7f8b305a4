#pragma once

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>

namespace exf {

class FetchError : public std::runtime_error {
 public:
  explicit FetchError(const std::string& what, int status = 0)
      : std::runtime_error(what), status_(status) {}
  /// HTTP status when the server answered, else 0.
  int status() const noexcept { return status_; }

 private:
  int status_;
};

/// Streams `url` (http:// or file://) to `destination` without parsing it.
/// Refuses to replace an existing file unless `overwrite` is set. The file is
/// written under a temporary name and renamed on success.
/// Returns the number of bytes written; throws FetchError.
std::uintmax_t fetch_snapshot(const std::string& url, const std::filesystem::path& destination,
                              bool overwrite = false);

}  // namespace exf
