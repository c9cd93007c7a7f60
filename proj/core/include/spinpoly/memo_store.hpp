#ifndef SPINPOLY_MEMO_STORE_HPP
#define SPINPOLY_MEMO_STORE_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "spinpoly/hilbert.hpp"

namespace spinpoly {

// File-backed map from canonical weight signatures to exact counts.
// Every record carries a checksum; a store that fails any check is
// rejected whole rather than partially read.
class MemoStore {
public:
    MemoStore() = default;

    // Missing file yields an empty store; malformed content throws
    // CorruptStore.
    static MemoStore load(const std::string& path);

    // Writes to a temporary file, then renames over the target.
    void save(const std::string& path) const;

    void put(const PsiKey& key, const BigInt& value);
    void absorb(const MemoCache& cache);
    void seed(MemoCache& cache) const;
    std::size_t size() const { return entries_.size(); }

    static std::uint64_t checksum(const std::string& payload);

private:
    struct KeyLess {
        bool operator()(const PsiKey& a, const PsiKey& b) const {
            return std::tie(a.g, a.level, a.r) < std::tie(b.g, b.level, b.r);
        }
    };
    std::map<PsiKey, BigInt, KeyLess> entries_;
};

// Advisory exclusive lock held for the duration of a run that may write
// the store.
class FileLock {
public:
    explicit FileLock(const std::string& path);
    ~FileLock();
    FileLock(const FileLock&) = delete;
    FileLock& operator=(const FileLock&) = delete;

private:
    int fd_ = -1;
};

} // namespace spinpoly

#endif
