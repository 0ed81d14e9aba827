#include "hurwitz_cache.hpp"

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <system_error>
#include <unistd.h>
#include <vector>

namespace sslforms::cli {

namespace {

constexpr std::string_view kHeaderPrefix = "hurwitz12,v1,max_n=";

template <typename T>
T parse_number(std::string_view s, const char* what) {
  T v{};
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
    throw std::runtime_error(std::string("bad ") + what + " '" + std::string(s) + "'");
  }
  return v;
}

}  // namespace

std::string format_cache(const HurwitzTable& table) {
  std::string out;
  out.reserve(16 * (table.max_n() + 2));
  out += kHeaderPrefix;
  out += std::to_string(table.max_n());
  out += '\n';
  const auto& v = table.values();
  for (std::size_t n = 0; n < v.size(); ++n) {
    out += std::to_string(n);
    out += ',';
    out += std::to_string(v[n]);
    out += '\n';
  }
  return out;
}

HurwitzTable parse_cache(const std::string& text) {
  std::string_view rest = text;
  auto next_line = [&rest]() -> std::optional<std::string_view> {
    if (rest.empty()) return std::nullopt;
    const auto nl = rest.find('\n');
    if (nl == std::string_view::npos) throw std::runtime_error("missing final newline");
    const std::string_view line = rest.substr(0, nl);
    rest.remove_prefix(nl + 1);
    return line;
  };
  const auto header = next_line();
  if (!header || !header->starts_with(kHeaderPrefix)) throw std::runtime_error("bad header");
  const auto max_n = parse_number<std::size_t>(header->substr(kHeaderPrefix.size()), "max_n");
  std::vector<i64> values;
  values.reserve(max_n + 1);
  while (const auto line = next_line()) {
    const auto comma = line->find(',');
    if (comma == std::string_view::npos) throw std::runtime_error("line without comma");
    const auto n = parse_number<std::size_t>(line->substr(0, comma), "index");
    if (n != values.size()) throw std::runtime_error("non-contiguous index " + std::to_string(n));
    values.push_back(parse_number<i64>(line->substr(comma + 1), "value"));
  }
  if (values.size() != max_n + 1) {
    throw std::runtime_error("expected " + std::to_string(max_n + 1) + " rows, found " + std::to_string(values.size()));
  }
  try {
    return HurwitzTable::from_values(std::move(values));
  } catch (const std::invalid_argument& e) {
    throw std::runtime_error(e.what());
  }
}

std::optional<std::filesystem::path> default_cache_dir() {
  if (const char* env = std::getenv(kCacheDirEnv); env && *env) return std::filesystem::path(env);
  if (const char* xdg = std::getenv("XDG_CACHE_HOME"); xdg && *xdg) return std::filesystem::path(xdg) / "sslforms";
  if (const char* home = std::getenv("HOME"); home && *home) {
    return std::filesystem::path(home) / ".cache" / "sslforms";
  }
  return std::nullopt;
}

HurwitzCache::HurwitzCache(std::optional<std::filesystem::path> dir, std::ostream& warnings) : warn_(warnings) {
  if (dir) {
    file_ = *dir / kCacheFileName;
    stats_.enabled = true;
    stats_.path = file_->string();
  }
}

void HurwitzCache::load() {
  if (loaded_) return;
  loaded_ = true;
  if (!file_) return;
  std::error_code ec;
  if (!std::filesystem::exists(*file_, ec)) return;
  std::ifstream in(*file_, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    if (!in) throw std::runtime_error("unreadable");
    current_ = std::make_shared<const HurwitzTable>(parse_cache(buf.str()));
    stats_.loaded_max_n = current_->max_n();
  } catch (const std::exception& e) {
    warn_ << "warning: ignoring corrupt Hurwitz cache " << file_->string() << ": " << e.what()
          << "; recomputing\n";
    stats_.corrupt = true;
    current_.reset();
  }
}

std::shared_ptr<const HurwitzTable> HurwitzCache::table(std::size_t max_n) {
  load();
  if (current_ && current_->max_n() >= max_n) {
    stats_.hit = true;
    return current_;
  }
  const std::size_t target = current_ ? std::max(max_n, 2 * current_->max_n()) : max_n;
  current_ = std::make_shared<const HurwitzTable>(target);
  if (file_) write(*current_);
  return current_;
}

void HurwitzCache::persist(const std::shared_ptr<const HurwitzTable>& table) {
  load();
  if (!table || table->max_n() == 0) return;
  if (current_ && current_->max_n() >= table->max_n()) return;
  current_ = table;
  if (file_) write(*table);
}

void HurwitzCache::write(const HurwitzTable& table) {
  std::error_code ec;
  std::filesystem::create_directories(file_->parent_path(), ec);
  std::filesystem::path tmp = *file_;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    out << format_cache(table);
    if (!out) {
      warn_ << "warning: could not write Hurwitz cache " << tmp.string() << "\n";
      std::filesystem::remove(tmp, ec);
      return;
    }
  }
  std::filesystem::rename(tmp, *file_, ec);
  if (ec) {
    warn_ << "warning: could not replace Hurwitz cache " << file_->string() << ": " << ec.message() << "\n";
    std::filesystem::remove(tmp, ec);
    return;
  }
  stats_.written_max_n = table.max_n();
}

}  // namespace sslforms::cli
