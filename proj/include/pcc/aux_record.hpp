#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "pcc/errors.hpp"

namespace pcc {

// Structured side information: the auxiliary transmission J and the
// shared-randomness part of a cache. Fields are tagged and fixed-width so
// the serialized size depends only on (N, K, scheme parameters), never on
// the subpacketization scale, and can be audited.
class AuxRecord {
public:
    struct Field {
        std::string tag;
        uint8_t width;   // semantic width in bits, <= 64
        uint64_t value;  // < 2^width
    };

    void add(std::string tag, unsigned width, uint64_t value) {
        if (width == 0 || width > 64) throw AuxError("field width out of range");
        if (width < 64 && value >> width) throw AuxError("field value exceeds width");
        fields_.push_back({std::move(tag), static_cast<uint8_t>(width), value});
    }

    size_t count(std::string_view tag) const {
        size_t n = 0;
        for (const auto& f : fields_)
            if (f.tag == tag) n++;
        return n;
    }

    // idx-th field with this tag, in insertion order.
    uint64_t get(std::string_view tag, size_t idx = 0) const {
        for (const auto& f : fields_) {
            if (f.tag == tag) {
                if (idx == 0) return f.value;
                idx--;
            }
        }
        throw AuxError("missing aux field: " + std::string(tag));
    }

    const std::vector<Field>& fields() const { return fields_; }

    // [u8 tag_len][tag][u8 width][value, ceil(width/8) bytes LE] per field.
    void append_bytes(std::vector<uint8_t>& out) const {
        for (const auto& f : fields_) {
            out.push_back(static_cast<uint8_t>(f.tag.size()));
            out.insert(out.end(), f.tag.begin(), f.tag.end());
            out.push_back(f.width);
            for (unsigned b = 0; b < (f.width + 7u) / 8u; b++)
                out.push_back(static_cast<uint8_t>(f.value >> (8 * b)));
        }
    }
    std::vector<uint8_t> to_bytes() const {
        std::vector<uint8_t> out;
        append_bytes(out);
        return out;
    }

    uint64_t bit_size() const { return 8 * static_cast<uint64_t>(to_bytes().size()); }

private:
    std::vector<Field> fields_;
};

inline unsigned bit_width_for(uint64_t domain) {
    unsigned w = 1;
    while (domain > (1ULL << w)) w++;
    return w;
}

} // namespace pcc
