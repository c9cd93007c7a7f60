#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <string>

#include "spinpoly/memo_store.hpp"

using namespace spinpoly;

namespace {

struct TempFile {
    std::string path;
    explicit TempFile(const std::string& name) : path("/tmp/spinpoly_test_" + name) {
        std::remove(path.c_str());
    }
    ~TempFile() { std::remove(path.c_str()); }
};

} // namespace

TEST_CASE("memo store round trip") {
    TempFile f("roundtrip.memo");
    MemoStore store;
    store.put(PsiKey{2, 3, {1, 2}}, BigInt("123456789012345678901234567890"));
    store.put(PsiKey{0, 1, {}}, 1);
    store.save(f.path);

    const MemoStore loaded = MemoStore::load(f.path);
    CHECK(loaded.size() == 2);
    MemoCache cache;
    loaded.seed(cache);
    CHECK(*cache.lookup(PsiKey{2, 3, {1, 2}}) == BigInt("123456789012345678901234567890"));
    CHECK(*cache.lookup(PsiKey{0, 1, {}}) == 1);
}

TEST_CASE("missing store is an empty store") {
    CHECK(MemoStore::load("/tmp/spinpoly_no_such_store.memo").size() == 0);
}

TEST_CASE("corrupt records reject the whole store") {
    TempFile f("corrupt.memo");
    MemoStore store;
    store.put(PsiKey{1, 2, {1}}, 5);
    store.put(PsiKey{1, 3, {2}}, 6);
    store.save(f.path);

    // flip one digit of a stored value, keeping the checksum
    std::ifstream in(f.path);
    std::string content((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    in.close();
    auto pos = content.find(";5;");
    REQUIRE(pos != std::string::npos);
    content[pos + 1] = '7';
    std::ofstream out(f.path, std::ios::trunc);
    out << content;
    out.close();
    CHECK_THROWS_AS(MemoStore::load(f.path), CorruptStore);
}

TEST_CASE("bad header rejects the store") {
    TempFile f("header.memo");
    std::ofstream out(f.path);
    out << "spinpoly-memo 99\n";
    out.close();
    CHECK_THROWS_AS(MemoStore::load(f.path), CorruptStore);
}

TEST_CASE("truncated record rejects the store") {
    TempFile f("trunc.memo");
    MemoStore store;
    store.put(PsiKey{1, 2, {1}}, 5);
    store.save(f.path);
    std::ifstream in(f.path);
    std::string content((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    in.close();
    std::ofstream out(f.path, std::ios::trunc);
    out << content.substr(0, content.size() - 6);
    out.close();
    CHECK_THROWS_AS(MemoStore::load(f.path), CorruptStore);
}

TEST_CASE("warm cache equals cold cache") {
    TempFile f("warm.memo");
    const std::vector<std::int64_t> r{1, 1, 2};
    MemoCache cold;
    const BigInt value = psi(2, 3, r, 3, PsiMethod::Recurse, &cold);
    MemoStore store;
    store.absorb(cold);
    store.save(f.path);

    MemoCache warm;
    MemoStore::load(f.path).seed(warm);
    CHECK(psi(2, 3, r, 3, PsiMethod::Recurse, &warm) == value);
}

TEST_CASE("file lock is reentrant across scopes") {
    TempFile f("lock");
    {
        FileLock lock(f.path);
    }
    {
        FileLock lock(f.path);
    }
    CHECK(true);
}
