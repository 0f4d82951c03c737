// vulnfuse: multimodal smart-contract vulnerability detection
// Copyright 2026 The vulnfuse Authors.
// SPDX-License-Identifier: Apache-2.0

#include <vulnfuse/process.hpp>

#include <fcntl.h>
#include <poll.h>
#include <spawn.h>
#include <sys/wait.h>
#include <unistd.h>
#include <array>
#include <cerrno>
#include <cstring>

extern char** environ;

namespace vulnfuse
{
namespace
{
class Pipe
{
public:
    Pipe()
    {
        if (::pipe2(fds_, O_CLOEXEC) != 0)
            fds_[0] = fds_[1] = -1;
    }
    ~Pipe()
    {
        close_read();
        close_write();
    }
    Pipe(const Pipe&) = delete;
    Pipe& operator=(const Pipe&) = delete;

    [[nodiscard]] bool ok() const noexcept { return fds_[0] >= 0; }
    [[nodiscard]] int read_end() const noexcept { return fds_[0]; }
    [[nodiscard]] int write_end() const noexcept { return fds_[1]; }
    void close_read() noexcept { reset(fds_[0]); }
    void close_write() noexcept { reset(fds_[1]); }

private:
    static void reset(int& fd) noexcept
    {
        if (fd >= 0)
            ::close(fd);
        fd = -1;
    }
    int fds_[2]{-1, -1};
};
}  // namespace

std::optional<ProcessResult> run_process(const std::vector<std::string>& argv,
    const std::vector<std::pair<std::string, std::string>>& extra_env)
{
    if (argv.empty())
        return std::nullopt;

    Pipe out_pipe;
    Pipe err_pipe;
    if (!out_pipe.ok() || !err_pipe.ok())
        return std::nullopt;

    posix_spawn_file_actions_t actions;
    posix_spawn_file_actions_init(&actions);
    posix_spawn_file_actions_adddup2(&actions, out_pipe.write_end(), STDOUT_FILENO);
    posix_spawn_file_actions_adddup2(&actions, err_pipe.write_end(), STDERR_FILENO);
    posix_spawn_file_actions_addopen(&actions, STDIN_FILENO, "/dev/null", O_RDONLY, 0);

    std::vector<char*> args;
    for (const auto& a : argv)
        args.push_back(const_cast<char*>(a.c_str()));
    args.push_back(nullptr);

    std::vector<std::string> env_storage;
    for (char** e = environ; e != nullptr && *e != nullptr; ++e)
        env_storage.emplace_back(*e);
    for (const auto& [key, value] : extra_env)
        env_storage.push_back(key + "=" + value);
    std::vector<char*> envp;
    for (auto& e : env_storage)
        envp.push_back(e.data());
    envp.push_back(nullptr);

    pid_t pid = 0;
    const int rc = posix_spawnp(&pid, args[0], &actions, nullptr, args.data(), envp.data());
    posix_spawn_file_actions_destroy(&actions);
    if (rc != 0)
        return std::nullopt;

    out_pipe.close_write();
    err_pipe.close_write();

    ProcessResult result;
    std::array<pollfd, 2> fds{{{out_pipe.read_end(), POLLIN, 0}, {err_pipe.read_end(), POLLIN, 0}}};
    std::array<std::string*, 2> sinks{&result.out, &result.err};
    size_t open_streams = 2;
    char buf[8192];
    while (open_streams > 0)
    {
        if (::poll(fds.data(), fds.size(), -1) < 0)
        {
            if (errno == EINTR)
                continue;
            break;
        }
        for (size_t i = 0; i < fds.size(); ++i)
        {
            if (fds[i].fd < 0 || fds[i].revents == 0)
                continue;
            const auto n = ::read(fds[i].fd, buf, sizeof(buf));
            if (n > 0)
                sinks[i]->append(buf, size_t(n));
            else if (n == 0 || errno != EINTR)
            {
                fds[i].fd = -1;
                --open_streams;
            }
        }
    }

    int status = 0;
    while (::waitpid(pid, &status, 0) < 0 && errno == EINTR)
    {
    }
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : 128 + WTERMSIG(status);
    // posix_spawnp reports exec failure of a found-but-unrunnable file as exit 127.
    if (result.exit_code == 127 && result.out.empty() && result.err.empty())
        return std::nullopt;
    return result;
}
}  // namespace vulnfuse
