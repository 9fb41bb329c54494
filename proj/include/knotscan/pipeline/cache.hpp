#pragma once

#include <atomic>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <thread>

#include <json.hpp>
#include <openssl/evp.h>

#include "knotscan/errors.hpp"

namespace knotscan {

inline constexpr int kCacheFormatVersion = 1;

inline std::string sha256_hex(std::string_view data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1)
    throw Error("SHA-256 computation failed");
  static constexpr char hex[] = "0123456789abcdef";
  std::string out;
  out.reserve(2 * len);
  for (unsigned int i = 0; i < len; ++i) {
    out += hex[digest[i] >> 4];
    out += hex[digest[i] & 15];
  }
  return out;
}

/// Content-addressed on-disk store. An entry is a small JSON file named by the
/// SHA-256 of (format version, kind, key). Writes go to a temporary file that is
/// renamed into place, so concurrent writers never expose partial entries.
class ResultCache {
 public:
  using WarningSink = std::function<void(const std::string&)>;

  explicit ResultCache(std::filesystem::path dir, int version = kCacheFormatVersion, WarningSink warn = {})
      : dir_(std::move(dir)), version_(version), warn_(std::move(warn)) {
    std::error_code ec;
    std::filesystem::create_directories(dir_, ec);
    if (ec || !std::filesystem::is_directory(dir_))
      throw InvalidArgument("cannot create cache directory '" + dir_.string() + "'");
    if (!warn_)
      warn_ = [](const std::string& m) {
        static std::mutex mu;
        std::lock_guard lock(mu);
        std::cerr << "warning: " << m << '\n';
      };
  }

  const std::filesystem::path& directory() const { return dir_; }

  std::filesystem::path path_for(std::string_view kind, std::string_view key) const {
    std::string material = "v" + std::to_string(version_) + '\n';
    material.append(kind);
    material += '\n';
    material.append(key);
    return dir_ / (sha256_hex(material) + ".json");
  }

  std::optional<std::string> get(std::string_view kind, std::string_view key) const {
    const auto path = path_for(kind, key);
    std::ifstream in(path, std::ios::binary);
    if (!in) return std::nullopt;
    std::stringstream buf;
    buf << in.rdbuf();
    try {
      const auto j = nlohmann::json::parse(buf.str());
      if (j.at("version").get<int>() != version_ || j.at("kind").get<std::string>() != kind ||
          j.at("key").get<std::string>() != key) {
        warn_("cache entry " + path.filename().string() + " does not match its key; ignoring it");
        return std::nullopt;
      }
      return j.at("value").get<std::string>();
    } catch (const nlohmann::json::exception&) {
      warn_("corrupt cache entry " + path.filename().string() + "; recomputing");
      return std::nullopt;
    }
  }

  void put(std::string_view kind, std::string_view key, std::string_view value) const {
    const auto path = path_for(kind, key);
    nlohmann::json j;
    j["version"] = version_;
    j["kind"] = kind;
    j["key"] = key;
    j["value"] = value;
    static std::atomic<unsigned long> counter{0};
    std::ostringstream tmp_name;
    tmp_name << path.filename().string() << ".tmp." << std::hash<std::thread::id>{}(std::this_thread::get_id()) << '.'
             << counter++;
    const auto tmp = dir_ / tmp_name.str();
    {
      std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
      out << j.dump();
      if (!out) {
        warn_("cannot write cache entry " + tmp.string());
        return;
      }
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
      std::filesystem::remove(tmp, ec);
      warn_("cannot store cache entry " + path.filename().string());
    }
  }

 private:
  std::filesystem::path dir_;
  int version_;
  WarningSink warn_;
};

}  // namespace knotscan
