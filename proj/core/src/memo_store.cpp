#include "spinpoly/memo_store.hpp"

#include <algorithm>
#include <cerrno>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

namespace spinpoly {

namespace {

constexpr const char* kHeader = "spinpoly-memo 1";

std::string key_payload(const PsiKey& key, const BigInt& value) {
    std::ostringstream os;
    os << key.g << ";" << key.level << ";";
    if (key.r.empty()) {
        os << "-";
    } else {
        for (std::size_t i = 0; i < key.r.size(); ++i) {
            if (i)
                os << ",";
            os << key.r[i];
        }
    }
    os << ";" << value;
    return os.str();
}

} // namespace

std::uint64_t MemoStore::checksum(const std::string& payload) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : payload) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

MemoStore MemoStore::load(const std::string& path) {
    MemoStore store;
    std::ifstream in(path);
    if (!in.is_open())
        return store; // a fresh cache

    std::string line;
    if (!std::getline(in, line) || line != kHeader)
        throw CorruptStore("memo store has a bad or missing header: " + path);
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty())
            continue;
        const auto fail = [&](const std::string& why) {
            throw CorruptStore("memo store " + path + " line " + std::to_string(lineno) + ": " +
                               why);
        };
        std::vector<std::string> fields;
        std::size_t start = 0;
        for (std::size_t i = 0; i <= line.size(); ++i) {
            if (i == line.size() || line[i] == ';') {
                fields.push_back(line.substr(start, i - start));
                start = i + 1;
            }
        }
        if (fields.size() != 5)
            fail("expected 5 fields");
        PsiKey key;
        BigInt value;
        std::uint64_t recorded = 0;
        try {
            key.g = std::stoi(fields[0]);
            key.level = std::stoll(fields[1]);
            if (fields[2] != "-") {
                std::istringstream rs(fields[2]);
                std::string tok;
                while (std::getline(rs, tok, ','))
                    key.r.push_back(std::stoll(tok));
            }
            value = BigInt(fields[3]);
            recorded = std::stoull(fields[4], nullptr, 16);
        } catch (const std::exception&) {
            fail("unparseable record");
        }
        if (checksum(key_payload(key, value)) != recorded)
            fail("checksum mismatch");
        if (!std::is_sorted(key.r.begin(), key.r.end()))
            fail("weights not in canonical order");
        store.entries_[key] = value;
    }
    return store;
}

void MemoStore::save(const std::string& path) const {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::trunc);
        if (!out.is_open())
            throw Error("cannot write memo store: " + tmp);
        out << kHeader << "\n";
        for (const auto& [key, value] : entries_) {
            const std::string payload = key_payload(key, value);
            char buf[17];
            std::snprintf(buf, sizeof buf, "%016llx",
                          static_cast<unsigned long long>(checksum(payload)));
            out << payload << ";" << buf << "\n";
        }
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0)
        throw Error("cannot move memo store into place: " + path);
}

void MemoStore::put(const PsiKey& key, const BigInt& value) { entries_[key] = value; }

void MemoStore::absorb(const MemoCache& cache) {
    for (const auto& [key, value] : cache.snapshot())
        entries_[key] = value;
}

void MemoStore::seed(MemoCache& cache) const {
    for (const auto& [key, value] : entries_)
        cache.store(key, value);
}

FileLock::FileLock(const std::string& path) {
    fd_ = ::open(path.c_str(), O_CREAT | O_RDWR, 0644);
    if (fd_ < 0)
        throw Error("cannot open lock file: " + path);
    if (::flock(fd_, LOCK_EX) != 0) {
        ::close(fd_);
        fd_ = -1;
        throw Error("cannot lock: " + path);
    }
}

FileLock::~FileLock() {
    if (fd_ >= 0) {
        ::flock(fd_, LOCK_UN);
        ::close(fd_);
    }
}

} // namespace spinpoly
