#include "windingq/cache.hpp"

#include "windingq/errors.hpp"

#include <zlib.h>

#include <fstream>
#include <sstream>
#include <unistd.h>

namespace windingq {

namespace {

constexpr const char* kMagic = "windingq-cache";

// Integers are written as "<length>:<decimal>".
void put_int(std::ostream& os, const Int& x)
{
    const std::string s = x.get_str();
    os << s.size() << ':' << s << ' ';
}

void put_rat(std::ostream& os, const Rat& x)
{
    put_int(os, x.get_num());
    put_int(os, x.get_den());
}

void put_matrix(std::ostream& os, const IntMatrix& m)
{
    os << m.rows() << ' ' << m.cols() << '\n';
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j)
            put_int(os, m(i, j));
        os << '\n';
    }
}

class Reader {
public:
    explicit Reader(const std::string& s) : is_(s) {}

    bool ok() const { return ok_; }

    std::string word()
    {
        std::string w;
        if (!(is_ >> w))
            ok_ = false;
        return w;
    }

    long number()
    {
        long v = 0;
        if (!(is_ >> v))
            ok_ = false;
        return v;
    }

    std::size_t count()
    {
        const long v = number();
        if (v < 0)
            ok_ = false;
        return ok_ ? static_cast<std::size_t>(v) : 0;
    }

    Int integer()
    {
        std::size_t len = 0;
        char colon = 0;
        if (!(is_ >> len) || !is_.get(colon) || colon != ':' || len == 0 || len > 1000000) {
            ok_ = false;
            return 0;
        }
        std::string digits(len, '\0');
        if (!is_.read(digits.data(), static_cast<std::streamsize>(len))) {
            ok_ = false;
            return 0;
        }
        Int x;
        if (x.set_str(digits, 10) != 0)
            ok_ = false;
        return x;
    }

    Rat rational()
    {
        Int n = integer();
        Int d = integer();
        if (!ok_ || d == 0) {
            ok_ = false;
            return 0;
        }
        Rat r(n, d);
        r.canonicalize();
        return r;
    }

    IntMatrix matrix()
    {
        const std::size_t r = count();
        const std::size_t c = count();
        if (!ok_ || r > 100000 || c > 100000) {
            ok_ = false;
            return {};
        }
        IntMatrix m(r, c);
        for (std::size_t i = 0; i < r && ok_; ++i)
            for (std::size_t j = 0; j < c && ok_; ++j)
                m(i, j) = integer();
        return m;
    }

    ZPoly poly()
    {
        const std::size_t n = count();
        ZPoly f;
        for (std::size_t i = 0; i < n && ok_; ++i)
            f.push_back(integer());
        return f;
    }

private:
    std::istringstream is_;
    bool ok_ = true;
};

unsigned long checksum(const std::string& body)
{
    return crc32(crc32(0L, Z_NULL, 0), reinterpret_cast<const Bytef*>(body.data()),
                 static_cast<uInt>(body.size()));
}

} // namespace

CacheEntry CacheEntry::capture(const ManinSpace& space, const HeckeCache& hecke,
                               const std::vector<IsotypicClass>& classes)
{
    CacheEntry e;
    e.level = space.level();
    e.symbol_table = space.symbol_table();
    e.free_symbols = space.free_symbols();
    e.basis_change = space.basis_change();
    e.hecke = hecke.cuspidal_primes();
    for (const auto& c : classes)
        e.fingerprints.emplace_back(c.label, c.fingerprint);
    return e;
}

ManinSpace CacheEntry::space() const
{
    return ManinSpace::from_parts(level, symbol_table, free_symbols, basis_change);
}

void CacheEntry::seed(HeckeCache& cache) const
{
    for (const auto& [n, m] : hecke)
        cache.seed_cuspidal(n, m);
}

std::filesystem::path cache_path(const std::filesystem::path& dir, long level)
{
    return dir / ("level-" + std::to_string(level) + ".wqc");
}

std::string serialize(const CacheEntry& entry)
{
    std::ostringstream os;
    os << "level " << entry.level << '\n';
    os << "symbols " << entry.symbol_table.size() << '\n';
    for (const auto& row : entry.symbol_table) {
        os << row.size() << ' ';
        for (const auto& [idx, c] : row) {
            os << idx << ' ';
            put_int(os, c);
        }
        os << '\n';
    }
    os << "free " << entry.free_symbols.size() << '\n';
    for (auto f : entry.free_symbols)
        os << f << ' ';
    os << '\n';
    os << "basis " << entry.basis_change.rows() << ' ' << entry.basis_change.cols() << '\n';
    for (std::size_t i = 0; i < entry.basis_change.rows(); ++i) {
        for (std::size_t j = 0; j < entry.basis_change.cols(); ++j)
            put_rat(os, entry.basis_change(i, j));
        os << '\n';
    }
    os << "hecke " << entry.hecke.size() << '\n';
    for (const auto& [n, m] : entry.hecke) {
        os << n << ' ';
        put_matrix(os, m);
    }
    os << "classes " << entry.fingerprints.size() << '\n';
    for (const auto& [label, fp] : entry.fingerprints) {
        os << label << ' ' << fp.size() << '\n';
        for (const auto& f : fp) {
            os << f.ell << ' ' << f.factor.size() << ' ';
            for (const auto& c : f.factor)
                put_int(os, c);
            os << '\n';
        }
    }
    const std::string body = os.str();
    std::ostringstream out;
    out << kMagic << ' ' << entry.format_version << '\n'
        << "crc " << checksum(body) << ' ' << body.size() << '\n'
        << body;
    return out.str();
}

std::optional<CacheEntry> deserialize(const std::string& text)
{
    const auto first = text.find('\n');
    if (first == std::string::npos)
        return std::nullopt;
    const auto second = text.find('\n', first + 1);
    if (second == std::string::npos)
        return std::nullopt;
    {
        std::istringstream head(text.substr(0, second));
        std::string magic, crc_word;
        int version = 0;
        unsigned long crc = 0;
        std::size_t size = 0;
        if (!(head >> magic >> version >> crc_word >> crc >> size))
            return std::nullopt;
        if (magic != kMagic || version != kCacheFormatVersion || crc_word != "crc")
            return std::nullopt;
        const std::string body = text.substr(second + 1);
        if (body.size() != size || checksum(body) != crc)
            return std::nullopt;
    }

    Reader r(text.substr(second + 1));
    CacheEntry e;
    if (r.word() != "level")
        return std::nullopt;
    e.level = r.number();
    if (r.word() != "symbols")
        return std::nullopt;
    const std::size_t nsym = r.count();
    if (!r.ok() || nsym > 100000000)
        return std::nullopt;
    e.symbol_table.resize(nsym);
    for (std::size_t i = 0; i < nsym && r.ok(); ++i) {
        const std::size_t len = r.count();
        for (std::size_t k = 0; k < len && r.ok(); ++k) {
            const auto idx = static_cast<std::uint32_t>(r.count());
            e.symbol_table[i].emplace_back(idx, r.integer());
        }
    }
    if (r.word() != "free")
        return std::nullopt;
    const std::size_t nfree = r.count();
    for (std::size_t i = 0; i < nfree && r.ok(); ++i)
        e.free_symbols.push_back(r.count());
    if (r.word() != "basis")
        return std::nullopt;
    {
        const std::size_t rows = r.count();
        const std::size_t cols = r.count();
        if (!r.ok())
            return std::nullopt;
        e.basis_change = RatMatrix(rows, cols);
        for (std::size_t i = 0; i < rows && r.ok(); ++i)
            for (std::size_t j = 0; j < cols && r.ok(); ++j)
                e.basis_change(i, j) = r.rational();
    }
    if (r.word() != "hecke")
        return std::nullopt;
    const std::size_t nh = r.count();
    for (std::size_t i = 0; i < nh && r.ok(); ++i) {
        const long n = r.number();
        e.hecke[n] = r.matrix();
    }
    if (r.word() != "classes")
        return std::nullopt;
    const std::size_t nc = r.count();
    for (std::size_t i = 0; i < nc && r.ok(); ++i) {
        std::string label = r.word();
        const std::size_t len = r.count();
        std::vector<FingerprintEntry> fp;
        for (std::size_t k = 0; k < len && r.ok(); ++k) {
            FingerprintEntry f;
            f.ell = r.number();
            f.factor = r.poly();
            fp.push_back(std::move(f));
        }
        e.fingerprints.emplace_back(std::move(label), std::move(fp));
    }
    if (!r.ok())
        return std::nullopt;
    return e;
}

void cache_store(const std::filesystem::path& dir, const CacheEntry& entry)
{
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec)
        throw IoFailure("cannot create " + dir.string() + ": " + ec.message());
    const auto target = cache_path(dir, entry.level);
    auto tmp = target;
    tmp += ".tmp" + std::to_string(::getpid());
    {
        std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
        if (!os)
            throw IoFailure("cannot write " + tmp.string());
        os << serialize(entry);
        os.flush();
        if (!os)
            throw IoFailure("short write to " + tmp.string());
    }
    std::filesystem::rename(tmp, target, ec);
    if (ec) {
        std::filesystem::remove(tmp);
        throw IoFailure("cannot rename to " + target.string() + ": " + ec.message());
    }
}

std::optional<CacheEntry> cache_load(const std::filesystem::path& dir, long level)
{
    const auto path = cache_path(dir, level);
    std::ifstream is(path, std::ios::binary);
    if (!is)
        return std::nullopt;
    std::ostringstream ss;
    ss << is.rdbuf();
    auto e = deserialize(ss.str());
    if (!e || e->level != level)
        return std::nullopt;
    return e;
}

} // namespace windingq
