#include "exf/fetch.hpp"

#include <fstream>
#include <regex>
#include <system_error>

#include "httplib.h"

namespace exf {

namespace fs = std::filesystem;

namespace {

struct TempFile {
  fs::path path;
  bool keep = false;
  ~TempFile() {
    if (!keep) {
      std::error_code ec;
      fs::remove(path, ec);
    }
  }
};

void commit(TempFile& tmp, const fs::path& destination) {
  std::error_code ec;
  fs::rename(tmp.path, destination, ec);
  if (ec) throw FetchError("cannot move download into place: " + ec.message());
  tmp.keep = true;
}

}  // namespace

std::uintmax_t fetch_snapshot(const std::string& url, const fs::path& destination, bool overwrite) {
  static const std::regex pattern(R"(^([A-Za-z][A-Za-z0-9+.-]*)://([^/:]*)(?::(\d+))?(/.*)?$)");
  std::smatch m;
  if (!std::regex_match(url, m, pattern)) throw FetchError("malformed URL '" + url + "'");
  const std::string scheme = m[1];
  const std::string host = m[2];
  const std::string path = m[4].matched ? std::string(m[4]) : "/";

  if (fs::exists(destination) && !overwrite)
    throw FetchError("'" + destination.string() + "' exists (pass --overwrite to replace it)");
  if (destination.has_parent_path()) fs::create_directories(destination.parent_path());
  TempFile tmp{destination.string() + ".part"};

  if (scheme == "file") {
    if (!host.empty() && host != "localhost") throw FetchError("file URL with remote host '" + host + "'");
    std::error_code ec;
    fs::copy_file(path, tmp.path, fs::copy_options::overwrite_existing, ec);
    if (ec) throw FetchError("cannot read '" + path + "': " + ec.message());
    commit(tmp, destination);
    return fs::file_size(destination);
  }
  if (scheme != "http") throw FetchError("unsupported URL scheme '" + scheme + "' (http and file only)");

  const int port = m[3].matched ? std::stoi(m[3]) : 80;
  httplib::Client client(host, port);
  client.set_follow_location(true);
  client.set_connection_timeout(30);
  client.set_read_timeout(300);

  std::ofstream out(tmp.path, std::ios::binary);
  if (!out) throw FetchError("cannot write '" + tmp.path.string() + "'");
  std::uintmax_t bytes = 0;
  const auto res = client.Get(path, [&](const char* data, std::size_t len) {
    out.write(data, static_cast<std::streamsize>(len));
    bytes += len;
    return static_cast<bool>(out);
  });
  out.close();
  if (!res) throw FetchError("request to " + url + " failed: " + httplib::to_string(res.error()));
  if (res->status != 200)
    throw FetchError("HTTP " + std::to_string(res->status) + " for " + url, res->status);
  if (!out) throw FetchError("write failed for '" + tmp.path.string() + "'");
  commit(tmp, destination);
  return bytes;
}

}  // namespace exf
