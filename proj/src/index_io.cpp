#include <zlib.h>

#include <algorithm>
#include <array>
#include <fstream>
#include <iterator>
#include <limits>

#include <fmt/format.h>

#include "fieldspan/errors.hpp"
#include "fieldspan/index.hpp"

namespace fieldspan {

namespace {

constexpr std::array<char, 4> magic = {'F', 'S', 'P', 'X'};
constexpr std::uint8_t format_version = 1;
constexpr std::size_t header_size = magic.size() + 1;
constexpr std::size_t checksum_size = 4;

std::uint32_t crc32_of(std::string_view bytes)
{
    uLong crc = crc32(0L, Z_NULL, 0);
    // zlib takes uInt lengths; feed large buffers in chunks.
    constexpr std::size_t chunk = std::numeric_limits<uInt>::max();
    for (std::size_t off = 0; off < bytes.size(); off += chunk) {
        auto len = std::min(chunk, bytes.size() - off);
        crc = crc32(crc, reinterpret_cast<Bytef const*>(bytes.data() + off), static_cast<uInt>(len));
    }
    return static_cast<std::uint32_t>(crc);
}

class Writer {
  public:
    void u8(std::uint8_t v) { m_out.push_back(static_cast<char>(v)); }
    void u32(std::uint32_t v)
    {
        for (int i = 0; i < 4; ++i) {
            m_out.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
        }
    }
    void size(std::size_t v)
    {
        if (v > std::numeric_limits<std::uint32_t>::max()) {
            throw FormatError("index too large for format version 1");
        }
        u32(static_cast<std::uint32_t>(v));
    }
    void str(std::string_view s)
    {
        size(s.size());
        m_out.append(s);
    }
    void raw(std::string_view s) { m_out.append(s); }
    std::string& buffer() { return m_out; }

  private:
    std::string m_out;
};

class Reader {
  public:
    explicit Reader(std::string_view in) : m_in(in) {}

    std::uint32_t u32()
    {
        need(4);
        std::uint32_t v = 0;
        for (int i = 0; i < 4; ++i) {
            v |= static_cast<std::uint32_t>(static_cast<unsigned char>(m_in[m_pos + i])) << (8 * i);
        }
        m_pos += 4;
        return v;
    }
    // A count of items that each occupy at least min_item_bytes; rejects
    // counts that cannot fit in the remaining input.
    std::uint32_t count(std::size_t min_item_bytes)
    {
        auto n = u32();
        if (min_item_bytes > 0 && n > remaining() / min_item_bytes) {
            throw FormatError("corrupted index: count exceeds remaining data");
        }
        return n;
    }
    std::string str()
    {
        auto n = u32();
        need(n);
        std::string s(m_in.substr(m_pos, n));
        m_pos += n;
        return s;
    }
    std::size_t remaining() const { return m_in.size() - m_pos; }

  private:
    void need(std::size_t n) const
    {
        if (remaining() < n) {
            throw FormatError("truncated index data");
        }
    }

    std::string_view m_in;
    std::size_t m_pos = 0;
};

}  // namespace

class IndexSerializer {
  public:
    static std::string write(Index const& index)
    {
        Writer w;
        w.raw(std::string_view(magic.data(), magic.size()));
        w.u8(format_version);
        w.size(index.m_schema.size());
        for (auto const& name : index.m_schema) {
            w.str(name);
        }
        w.size(index.m_doc_ids.size());
        for (auto const& id : index.m_doc_ids) {
            w.str(id);
        }
        for (auto const& lengths : index.m_field_len) {
            for (auto len : lengths) {
                w.u32(len);
            }
        }
        w.size(index.m_terms.size());
        for (auto const& [term, entry] : index.m_terms) {
            w.str(term);
            w.u32(entry.df);
            for (auto const& postings : entry.fields) {
                w.size(postings.size());
                for (auto const& posting : postings) {
                    w.u32(posting.doc);
                    w.size(posting.positions.size());
                    for (auto pos : posting.positions) {
                        w.u32(pos);
                    }
                }
            }
        }
        auto crc = crc32_of(w.buffer());
        w.u32(crc);
        return std::move(w.buffer());
    }

    static Index read(std::string_view bytes)
    {
        if (bytes.size() < magic.size() || !std::equal(magic.begin(), magic.end(), bytes.begin())) {
            throw FormatError("not an index file: bad magic bytes");
        }
        if (bytes.size() < header_size + checksum_size) {
            throw FormatError("truncated index file");
        }
        auto version = static_cast<std::uint8_t>(bytes[magic.size()]);
        if (version != format_version) {
            throw FormatError(fmt::format("unsupported index format version {}", version));
        }
        auto payload = bytes.substr(0, bytes.size() - checksum_size);
        auto stored_crc = Reader(bytes.substr(payload.size())).u32();
        if (stored_crc != crc32_of(payload)) {
            throw FormatError("index checksum mismatch (truncated or corrupted file)");
        }

        Reader r(payload.substr(header_size));
        Index index;
        auto num_fields = r.count(4);
        for (std::uint32_t f = 0; f < num_fields; ++f) {
            index.m_schema.push_back(r.str());
        }
        auto num_docs = r.count(4);
        for (std::uint32_t d = 0; d < num_docs; ++d) {
            auto id = r.str();
            if (!index.m_doc_lookup.emplace(id, d).second) {
                throw FormatError(fmt::format("corrupted index: duplicate document id '{}'", id));
            }
            index.m_doc_ids.push_back(std::move(id));
        }
        index.m_field_len.assign(num_fields, std::vector<std::uint32_t>(num_docs, 0));
        index.m_field_total.assign(num_fields, 0);
        for (std::uint32_t f = 0; f < num_fields; ++f) {
            for (std::uint32_t d = 0; d < num_docs; ++d) {
                auto len = r.u32();
                index.m_field_len[f][d] = len;
                index.m_field_total[f] += len;
            }
        }

        auto num_terms = r.count(4);
        std::vector<std::uint32_t> seen_in_doc(num_docs, std::numeric_limits<std::uint32_t>::max());
        for (std::uint32_t t = 0; t < num_terms; ++t) {
            auto term = r.str();
            if (term.empty() || (!index.m_terms.empty() && !(index.m_terms.rbegin()->first < term))) {
                throw FormatError("corrupted index: terms not strictly ordered");
            }
            TermPostings entry;
            entry.df = r.u32();
            entry.fields.resize(num_fields);
            std::uint32_t distinct_docs = 0;
            for (std::uint32_t f = 0; f < num_fields; ++f) {
                auto n = r.count(8);
                auto& postings = entry.fields[f];
                postings.reserve(n);
                for (std::uint32_t p = 0; p < n; ++p) {
                    Posting posting;
                    posting.doc = r.u32();
                    if (posting.doc >= num_docs || (!postings.empty() && postings.back().doc >= posting.doc)) {
                        throw FormatError("corrupted index: invalid posting order");
                    }
                    auto npos = r.count(4);
                    if (npos == 0) {
                        throw FormatError("corrupted index: empty posting");
                    }
                    posting.positions.reserve(npos);
                    for (std::uint32_t i = 0; i < npos; ++i) {
                        auto pos = r.u32();
                        if ((i > 0 && posting.positions.back() >= pos) || pos >= index.m_field_len[f][posting.doc]) {
                            throw FormatError("corrupted index: invalid positions");
                        }
                        posting.positions.push_back(pos);
                    }
                    if (seen_in_doc[posting.doc] != t) {
                        seen_in_doc[posting.doc] = t;
                        ++distinct_docs;
                    }
                    postings.push_back(std::move(posting));
                }
            }
            if (entry.df != distinct_docs || entry.df == 0) {
                throw FormatError(fmt::format("corrupted index: inconsistent df for '{}'", term));
            }
            index.m_terms.emplace_hint(index.m_terms.end(), std::move(term), std::move(entry));
        }
        if (r.remaining() != 0) {
            throw FormatError("corrupted index: trailing bytes");
        }
        return index;
    }
};

std::string serialize_index(Index const& index) { return IndexSerializer::write(index); }

Index deserialize_index(std::string_view bytes) { return IndexSerializer::read(bytes); }

void save_index(Index const& index, std::filesystem::path const& path)
{
    auto bytes = serialize_index(index);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw Error(fmt::format("cannot open '{}' for writing", path.string()));
    }
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    out.close();
    if (!out) {
        throw Error(fmt::format("failed writing '{}'", path.string()));
    }
}

Index load_index(std::filesystem::path const& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error(fmt::format("cannot open '{}' for reading", path.string()));
    }
    std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (in.bad()) {
        throw Error(fmt::format("failed reading '{}'", path.string()));
    }
    return deserialize_index(bytes);
}

}  // namespace fieldspan
