#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <spawn.h>
#include <sys/wait.h>
#include <unistd.h>

#include <atomic>
#include <cctype>
#include <cerrno>
#include <cstdlib>
#include <cstring>
#include <fstream>

#include "tsynth/core/errors.hpp"
#include "tsynth/solver/solver.hpp"

extern char** environ;

namespace tsynth {

namespace {

class Fd {
public:
    Fd() = default;
    explicit Fd(int fd) : fd_(fd) {}
    Fd(Fd&& o) noexcept : fd_(std::exchange(o.fd_, -1)) {}
    Fd& operator=(Fd&& o) noexcept {
        reset();
        fd_ = std::exchange(o.fd_, -1);
        return *this;
    }
    ~Fd() { reset(); }
    int get() const noexcept { return fd_; }
    void reset() {
        if (fd_ >= 0) ::close(fd_);
        fd_ = -1;
    }

private:
    int fd_ = -1;
};

std::pair<Fd, Fd> make_pipe() {
    int p[2];
    if (::pipe2(p, O_CLOEXEC) != 0) throw SolverError(std::string("pipe: ") + std::strerror(errno));
    return {Fd(p[0]), Fd(p[1])};
}

// Child process that is killed and reaped when the handle goes away.
class Child {
public:
    explicit Child(pid_t pid) : pid_(pid) {}
    Child(const Child&) = delete;
    Child& operator=(const Child&) = delete;
    ~Child() {
        if (pid_ > 0) {
            ::kill(pid_, SIGKILL);
            wait();
        }
    }
    void kill() { ::kill(pid_, SIGKILL); }
    int wait() {
        int status = 0;
        while (::waitpid(pid_, &status, 0) < 0 && errno == EINTR) {
        }
        pid_ = -1;
        return status;
    }

private:
    pid_t pid_;
};

// Tokenizer and reader for the subset of s-expressions solvers reply with.
class SexpReader {
public:
    explicit SexpReader(std::string_view text) : text_(text) {}

    std::string_view token() {
        skip_space();
        if (pos_ >= text_.size()) return {};
        if (text_[pos_] == '(' || text_[pos_] == ')') return text_.substr(pos_++, 1);
        if (text_[pos_] == '"') {
            auto end = text_.find('"', pos_ + 1);
            if (end == std::string_view::npos) end = text_.size() - 1;
            auto t = text_.substr(pos_, end + 1 - pos_);
            pos_ = end + 1;
            return t;
        }
        if (text_[pos_] == '|') {
            auto end = text_.find('|', pos_ + 1);
            if (end == std::string_view::npos) throw SolverError("unterminated quoted symbol in solver reply");
            auto t = text_.substr(pos_ + 1, end - pos_ - 1);
            pos_ = end + 1;
            return t;
        }
        auto start = pos_;
        while (pos_ < text_.size() && !std::isspace(static_cast<unsigned char>(text_[pos_])) && text_[pos_] != '(' &&
               text_[pos_] != ')')
            ++pos_;
        return text_.substr(start, pos_ - start);
    }

    void expect(std::string_view t) {
        if (token() != t) throw SolverError("malformed solver reply: expected '" + std::string(t) + "'");
    }

    std::int64_t value() {
        auto t = token();
        if (t == "true") return 1;
        if (t == "false") return 0;
        if (t == "(") {
            expect("-");
            auto v = number(token());
            expect(")");
            return -v;
        }
        return number(t);
    }

    bool at_end() {
        skip_space();
        return pos_ >= text_.size();
    }

private:
    static std::int64_t number(std::string_view t) {
        if (t.empty()) throw SolverError("malformed solver reply: missing value");
        std::int64_t v = 0;
        for (char c : t) {
            if (!std::isdigit(static_cast<unsigned char>(c)))
                throw SolverError("malformed solver reply: unexpected value '" + std::string(t) + "'");
            v = v * 10 + (c - '0');
        }
        return v;
    }
    void skip_space() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

Model parse_values(std::string_view text) {
    Model m;
    SexpReader r(text);
    if (r.at_end()) return m;
    r.expect("(");
    for (;;) {
        auto t = r.token();
        if (t == ")") break;
        if (t != "(") throw SolverError("malformed solver reply in model");
        auto name = std::string(r.token());
        m[name] = r.value();
        r.expect(")");
    }
    return m;
}

SolverOutcome parse_reply(const std::string& reply) {
    SolverOutcome out;
    auto nl = reply.find('\n');
    std::string first = reply.substr(0, nl);
    while (!first.empty() && std::isspace(static_cast<unsigned char>(first.back()))) first.pop_back();
    if (first == "sat") {
        out.verdict = Verdict::Sat;
        out.model = parse_values(nl == std::string::npos ? std::string_view{} : std::string_view(reply).substr(nl + 1));
    } else if (first == "unsat") {
        out.verdict = Verdict::Unsat;
    } else if (first == "unknown" || first == "timeout") {
        out.verdict = Verdict::Unknown;
    } else {
        throw SolverError("unexpected solver reply: " + reply.substr(0, 200));
    }
    return out;
}

void write_transcript(const SolverConfig& cfg, const std::string& doc, const std::string& reply) {
    if (!cfg.transcript_dir) return;
    static std::atomic<int> counter{0};
    std::filesystem::create_directories(*cfg.transcript_dir);
    auto stem = *cfg.transcript_dir / ("query-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
    std::ofstream(stem.string() + ".smt2") << doc;
    std::ofstream(stem.string() + ".out") << reply;
}

}  // namespace

const char* verdict_name(Verdict v) {
    switch (v) {
        case Verdict::Sat: return "sat";
        case Verdict::Unsat: return "unsat";
        case Verdict::Unknown: return "unknown";
        case Verdict::Timeout: return "timeout";
    }
    return "?";
}

SolverConfig SolverConfig::from_environment() {
    SolverConfig cfg;
    if (const char* path = std::getenv("TSYNTH_SOLVER"); path && *path) cfg.path = path;
    return cfg;
}

SolverOutcome solve(const std::string& document, const SolverConfig& cfg, std::stop_token stop) {
    using Clock = std::chrono::steady_clock;
    if (cfg.timeout.count() <= 0) throw InputError("solver timeout must be positive");
    auto [in_read, in_write] = make_pipe();
    auto [out_read, out_write] = make_pipe();

    posix_spawn_file_actions_t actions;
    posix_spawn_file_actions_init(&actions);
    posix_spawn_file_actions_adddup2(&actions, in_read.get(), STDIN_FILENO);
    posix_spawn_file_actions_adddup2(&actions, out_write.get(), STDOUT_FILENO);
    posix_spawn_file_actions_adddup2(&actions, out_write.get(), STDERR_FILENO);
    std::vector<std::string> argv_store{cfg.path};
    argv_store.insert(argv_store.end(), cfg.args.begin(), cfg.args.end());
    std::vector<char*> argv;
    for (auto& a : argv_store) argv.push_back(a.data());
    argv.push_back(nullptr);
    pid_t pid = 0;
    int rc = posix_spawnp(&pid, cfg.path.c_str(), &actions, nullptr, argv.data(), environ);
    posix_spawn_file_actions_destroy(&actions);
    if (rc != 0) throw SolverError("cannot launch solver '" + cfg.path + "': " + std::strerror(rc));
    Child child(pid);
    in_read.reset();
    out_write.reset();
    ::fcntl(in_write.get(), F_SETFL, O_NONBLOCK);
    ::signal(SIGPIPE, SIG_IGN);

    const auto start = Clock::now();
    const auto deadline = start + std::chrono::duration_cast<Clock::duration>(cfg.timeout);
    std::size_t written = 0;
    std::string reply;
    bool timed_out = false;
    char buf[65536];
    for (;;) {
        if (stop.stop_requested() || Clock::now() >= deadline) {
            timed_out = true;
            break;
        }
        pollfd fds[2] = {{out_read.get(), POLLIN, 0}, {in_write.get(), POLLOUT, 0}};
        int nfds = in_write.get() >= 0 ? 2 : 1;
        if (::poll(fds, nfds, 50) < 0) {
            if (errno == EINTR) continue;
            throw SolverError(std::string("poll: ") + std::strerror(errno));
        }
        if (nfds == 2 && (fds[1].revents & (POLLOUT | POLLERR | POLLHUP))) {
            auto n = ::write(in_write.get(), document.data() + written, document.size() - written);
            if (n > 0) written += static_cast<std::size_t>(n);
            if ((n < 0 && errno != EAGAIN) || written == document.size()) in_write.reset();
        }
        if (fds[0].revents & (POLLIN | POLLHUP | POLLERR)) {
            auto n = ::read(out_read.get(), buf, sizeof buf);
            if (n > 0) reply.append(buf, static_cast<std::size_t>(n));
            else if (n == 0) break;
            else if (errno != EINTR && errno != EAGAIN) throw SolverError(std::string("read: ") + std::strerror(errno));
        }
    }
    if (timed_out) child.kill();
    int status = child.wait();
    SolverOutcome out;
    if (timed_out) {
        out.verdict = Verdict::Timeout;
    } else {
        if (WIFEXITED(status) && WEXITSTATUS(status) == 127 && reply.empty())
            throw SolverError("cannot run solver '" + cfg.path + "'");
        out = parse_reply(reply);
    }
    out.elapsed = std::chrono::duration<double>(Clock::now() - start).count();
    out.transcript = reply;
    write_transcript(cfg, document, reply);
    return out;
}

SolverOutcome solve(const Formula& f, const SolverConfig& cfg, std::stop_token stop) {
    auto out = solve(emit_smtlib(f, cfg.logic), cfg, std::move(stop));
    if (out.verdict == Verdict::Sat)
        for (const auto& d : f.declarations())
            if (!out.model.count(d.name)) throw SolverError("solver model lacks a value for " + d.name);
    return out;
}

}  // namespace tsynth
