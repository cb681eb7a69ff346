#include "boundary/oracles.hpp"

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <spawn.h>
#include <sys/wait.h>
#include <unistd.h>

#include <array>
#include <boost/regex.hpp>
#include <cerrno>
#include <chrono>
#include <cstring>
#include <utility>
#include <json.hpp>

#include "boundary/errors.hpp"
#include "boundary/generators.hpp"
#include "boundary/utf8.hpp"
#include "boundary/xml.hpp"

extern char** environ;

namespace boundary {
namespace {

constexpr std::array<std::string_view, 5> kOracleNames = {"date", "json", "xml", "regex", "command"};
constexpr std::size_t kStderrExcerpt = 512;

// Owns a file descriptor.
class Fd {
 public:
  Fd() = default;
  explicit Fd(int fd) : fd_(fd) {}
  Fd(Fd&& other) noexcept : fd_(std::exchange(other.fd_, -1)) {}
  Fd& operator=(Fd&& other) noexcept {
    if (this != &other) {
      reset();
      fd_ = std::exchange(other.fd_, -1);
    }
    return *this;
  }
  ~Fd() { reset(); }
  int get() const { return fd_; }
  void reset() {
    if (fd_ >= 0) ::close(fd_);
    fd_ = -1;
  }

 private:
  int fd_ = -1;
};

struct Pipe {
  Fd read;
  Fd write;
};

Pipe open_pipe() {
  int fds[2];
  if (::pipe2(fds, O_CLOEXEC) != 0)
    throw OracleError(std::string("pipe2 failed: ") + std::strerror(errno));
  return {Fd(fds[0]), Fd(fds[1])};
}

}  // namespace

OracleVerdict ValidityOracle::check(std::string_view input) const {
  count_.fetch_add(1, std::memory_order_relaxed);
  const std::string text = utf8::sanitize(input);
  try {
    OracleVerdict verdict = evaluate(text);
    if (verdict.valid) verdict.detail.reset();
    return verdict;
  } catch (const OracleError&) {
    throw;
  } catch (const std::exception& e) {
    return OracleVerdict::reject(e.what());
  }
}

DateOracle::DateOracle(std::vector<calendar::DateFormat> formats)
    : ValidityOracle("date"), formats_(std::move(formats)) {
  if (formats_.empty()) throw ConfigError("date oracle needs at least one format");
}

OracleVerdict DateOracle::evaluate(std::string_view text) const {
  const auto fields = calendar::lex(text, formats_);
  if (!fields) return OracleVerdict::reject("not in an accepted date format");
  if (!calendar::is_valid(*fields)) return OracleVerdict::reject("no such calendar date");
  return OracleVerdict::accept();
}

OracleVerdict JsonOracle::evaluate(std::string_view text) const {
  if (nlohmann::json::accept(text)) return OracleVerdict::accept();
  try {
    const auto parsed = nlohmann::json::parse(text);
    (void)parsed;
  } catch (const nlohmann::json::exception& e) {
    return OracleVerdict::reject(e.what());
  }
  return OracleVerdict::reject("rejected by JSON parser");
}

OracleVerdict XmlOracle::evaluate(std::string_view text) const {
  auto result = xml::parse(text);
  if (result.ok) return OracleVerdict::accept();
  return OracleVerdict::reject(std::move(result.error));
}

OracleVerdict RegexOracle::evaluate(std::string_view text) const {
  try {
    const boost::regex pattern(text.begin(), text.end(), boost::regex::perl);
    (void)pattern;
  } catch (const boost::regex_error& e) {
    return OracleVerdict::reject(e.what());
  }
  return OracleVerdict::accept();
}

CommandOracle::CommandOracle(CommandSpec spec) : ValidityOracle("command"), spec_(std::move(spec)) {
  if (spec_.path.empty()) throw ConfigError("command.path is empty");
  if (spec_.timeout_ms <= 0) throw ConfigError("command.timeout_ms must be positive");
  if (spec_.max_parallel_processes < 1) throw ConfigError("command.max_parallel_processes must be >= 1");
}

OracleVerdict CommandOracle::evaluate(std::string_view text) const {
  {
    std::unique_lock lock(mutex_);
    slot_free_.wait(lock, [&] { return running_ < spec_.max_parallel_processes; });
    ++running_;
  }
  struct SlotRelease {
    const CommandOracle& self;
    ~SlotRelease() {
      {
        std::lock_guard lock(self.mutex_);
        --self.running_;
      }
      self.slot_free_.notify_one();
    }
  } release{*this};

  Pipe input = open_pipe();
  Pipe errors = open_pipe();

  posix_spawn_file_actions_t actions;
  posix_spawn_file_actions_init(&actions);
  posix_spawn_file_actions_adddup2(&actions, input.read.get(), STDIN_FILENO);
  posix_spawn_file_actions_adddup2(&actions, errors.write.get(), STDERR_FILENO);
  posix_spawn_file_actions_addopen(&actions, STDOUT_FILENO, "/dev/null", O_WRONLY, 0);

  std::vector<std::string> argv_storage;
  argv_storage.push_back(spec_.path);
  argv_storage.insert(argv_storage.end(), spec_.args.begin(), spec_.args.end());
  std::vector<char*> argv;
  for (auto& arg : argv_storage) argv.push_back(arg.data());
  argv.push_back(nullptr);

  pid_t pid = 0;
  const int rc = posix_spawnp(&pid, spec_.path.c_str(), &actions, nullptr, argv.data(), environ);
  posix_spawn_file_actions_destroy(&actions);
  if (rc != 0)
    throw OracleError("cannot launch '" + spec_.path + "': " + std::strerror(rc));

  input.read.reset();
  errors.write.reset();
  ::fcntl(input.write.get(), F_SETFL, O_NONBLOCK);

  const auto deadline = std::chrono::steady_clock::now() + std::chrono::milliseconds(spec_.timeout_ms);
  std::size_t written = 0;
  std::string stderr_text;
  bool stderr_open = true;
  bool timed_out = false;
  if (text.empty()) input.write.reset();

  while (stderr_open || input.write.get() >= 0) {
    const auto remaining = std::chrono::duration_cast<std::chrono::milliseconds>(
        deadline - std::chrono::steady_clock::now());
    if (remaining.count() <= 0) {
      timed_out = true;
      break;
    }
    std::array<pollfd, 2> fds{};
    nfds_t n = 0;
    if (stderr_open) fds[n++] = {errors.read.get(), POLLIN, 0};
    if (input.write.get() >= 0) fds[n++] = {input.write.get(), POLLOUT, 0};
    const int ready = ::poll(fds.data(), n, static_cast<int>(remaining.count()));
    if (ready < 0 && errno != EINTR) break;
    for (nfds_t i = 0; i < n; ++i) {
      if (fds[i].revents == 0) continue;
      if (fds[i].fd == errors.read.get()) {
        char buffer[4096];
        const ssize_t got = ::read(fds[i].fd, buffer, sizeof buffer);
        if (got <= 0) {
          stderr_open = false;
        } else if (stderr_text.size() < kStderrExcerpt) {
          stderr_text.append(buffer, static_cast<std::size_t>(got));
        }
      } else {
        // MSG_NOSIGNAL is unavailable for pipes; a closed reader gives EPIPE
        // once SIGPIPE is ignored for this write.
        sigset_t block, old;
        sigemptyset(&block);
        sigaddset(&block, SIGPIPE);
        pthread_sigmask(SIG_BLOCK, &block, &old);
        const ssize_t put = ::write(fds[i].fd, text.data() + written, text.size() - written);
        const int write_errno = errno;
        timespec zero{0, 0};
        while (put < 0 && write_errno == EPIPE && sigtimedwait(&block, nullptr, &zero) > 0) {
        }
        pthread_sigmask(SIG_SETMASK, &old, nullptr);
        if (put < 0) {
          if (write_errno != EAGAIN) input.write.reset();
        } else {
          written += static_cast<std::size_t>(put);
          if (written == text.size()) input.write.reset();
        }
      }
    }
  }

  int status = 0;
  if (!timed_out) {
    for (;;) {
      const pid_t done = ::waitpid(pid, &status, WNOHANG);
      if (done == pid) break;
      if (std::chrono::steady_clock::now() >= deadline) {
        timed_out = true;
        break;
      }
      ::usleep(1000);
    }
  }
  if (timed_out) {
    ::kill(pid, SIGKILL);
    ::waitpid(pid, &status, 0);
    return OracleVerdict::reject("timeout");
  }

  if (stderr_text.size() > kStderrExcerpt) stderr_text.resize(kStderrExcerpt);
  if (WIFEXITED(status)) {
    if (WEXITSTATUS(status) == 0) return OracleVerdict::accept();
    return OracleVerdict::reject("exit " + std::to_string(WEXITSTATUS(status)) +
                                 (stderr_text.empty() ? "" : ": " + stderr_text));
  }
  if (WIFSIGNALED(status))
    return OracleVerdict::reject("signal " + std::to_string(WTERMSIG(status)) +
                                 (stderr_text.empty() ? "" : ": " + stderr_text));
  return OracleVerdict::reject("abnormal termination");
}

OracleVerdict date_oracle(std::string_view text) {
  static const DateOracle oracle;
  return oracle.check(text);
}

OracleVerdict json_oracle(std::string_view text) {
  static const JsonOracle oracle;
  return oracle.check(text);
}

OracleVerdict xml_oracle(std::string_view text) {
  static const XmlOracle oracle;
  return oracle.check(text);
}

OracleVerdict regex_oracle(std::string_view text) {
  static const RegexOracle oracle;
  return oracle.check(text);
}

std::span<const std::string_view> oracle_names() { return kOracleNames; }

std::unique_ptr<ValidityOracle> make_oracle(std::string_view name, const OracleOptions& options) {
  if (name == "date") return std::make_unique<DateOracle>(options.date_formats);
  if (name == "json") return std::make_unique<JsonOracle>();
  if (name == "xml") return std::make_unique<XmlOracle>();
  if (name == "regex") return std::make_unique<RegexOracle>();
  if (name == "command") {
    if (!options.command) throw ConfigError("sut 'command' requires a command section");
    return std::make_unique<CommandOracle>(*options.command);
  }
  throw ConfigError("unknown sut '" + std::string(name) + "'");
}

TestSet reference_invalid_dates(std::size_t count, Rng& rng,
                                std::span<const calendar::DateFormat> formats) {
  TestSet out(Role::reference_invalid);
  if (count == 0) return out;
  if (formats.empty()) throw ConfigError("reference_invalid_dates needs a date format");
  const DateOracle oracle({formats.begin(), formats.end()});
  const std::size_t max_attempts = count * 100;
  for (std::size_t attempt = 0; out.size() < count && attempt < max_attempts; ++attempt) {
    const calendar::DateFormat format = formats[rng.below(formats.size())];
    calendar::DateFields f;
    f.year = static_cast<std::int64_t>(rng.below(10000));
    f.month = static_cast<std::int64_t>(rng.below(12)) + 1;
    f.day = static_cast<std::int64_t>(rng.below(
                static_cast<std::size_t>(calendar::days_in_month(f.year, f.month)))) + 1;
    // Month names cannot express month 0 or 13.
    const std::size_t kinds = format == calendar::DateFormat::day_month_name ? 2 : 4;
    switch (rng.below(kinds)) {
      case 0:
        f.day = calendar::days_in_month(f.year, f.month) + 1;
        break;
      case 1:
        while (calendar::is_leap(f.year)) f.year = static_cast<std::int64_t>(rng.below(10000));
        f.month = 2;
        f.day = 29;
        break;
      case 2:
        f.month = 13;
        break;
      default:
        f.month = 0;
        break;
    }
    std::string text = calendar::format(f, format);
    if (oracle.is_valid(text)) continue;
    Candidate candidate{std::move(text), false, {}};
    candidate.provenance.origin = "reference_invalid";
    candidate.provenance.index = out.size();
    out.insert(std::move(candidate));
  }
  if (out.size() < count) throw GenerationStall("could not build enough reference invalid dates");
  return out;
}

TestSet random_valid_set(const Generator& generator, const ValidityOracle& oracle,
                         std::size_t count, Rng& rng) {
  TestSet out(Role::random);
  const std::size_t max_attempts = count * 100 + 100;
  for (std::size_t attempt = 0; out.size() < count && attempt < max_attempts; ++attempt) {
    std::string text = sample(generator, rng).text;
    if (out.contains(text) || !oracle.is_valid(text)) continue;
    Candidate candidate{std::move(text), true, {}};
    candidate.provenance.origin = "random";
    candidate.provenance.index = out.size();
    out.insert(std::move(candidate));
  }
  if (out.size() < count)
    throw GenerationStall("random_valid_set: only " + std::to_string(out.size()) + " of " +
                          std::to_string(count) + " distinct valid samples");
  return out;
}

}  // namespace boundary
