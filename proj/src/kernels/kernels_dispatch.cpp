#include <atomic>

#include "semnet/kernels/kernels.hpp"

namespace semnet::kernels {

const Ops* avx2_ops_or_null();  // defined in kernels_avx2.cpp

namespace {

std::atomic<const Ops*> g_active{nullptr};

const Ops* detect() {
    if (const Ops* avx2 = avx2_ops_or_null()) return avx2;
    return &scalar_ops();
}

}  // namespace

const Ops& active_ops() {
    const Ops* ops = g_active.load(std::memory_order_acquire);
    if (!ops) {
        ops = detect();
        g_active.store(ops, std::memory_order_release);
    }
    return *ops;
}

bool set_backend(std::string_view name) {
    if (name == "auto") {
        g_active.store(detect(), std::memory_order_release);
        return true;
    }
    if (name == "scalar") {
        g_active.store(&scalar_ops(), std::memory_order_release);
        return true;
    }
    if (name == "avx2") {
        if (const Ops* avx2 = avx2_ops_or_null()) {
            g_active.store(avx2, std::memory_order_release);
            return true;
        }
        return false;
    }
    return false;
}

std::string_view active_backend_name() { return active_ops().name; }

bool avx2_available() { return avx2_ops_or_null() != nullptr; }

}  // namespace semnet::kernels
