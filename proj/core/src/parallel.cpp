#include "nonlocal_evolve/parallel.hpp"

#include <algorithm>
#include <cstdlib>
#include <exception>
#include <string>
#include <thread>
#include <vector>

namespace nlevolve {

void parallel_for(std::size_t count, unsigned threads,
                  const std::function<void(std::size_t)>& body)
{
    std::size_t const workers = std::min<std::size_t>(std::max(threads, 1u), count);
    if (workers <= 1)
    {
        for (std::size_t i = 0; i < count; ++i)
            body(i);
        return;
    }

    std::vector<std::exception_ptr> errors(count);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w)
    {
        pool.emplace_back([&, w] {
            for (std::size_t i = w; i < count; i += workers)
            {
                try
                {
                    body(i);
                }
                catch (...)
                {
                    errors[i] = std::current_exception();
                }
            }
        });
    }
    for (auto& t : pool)
        t.join();
    for (auto const& e : errors)
        if (e)
            std::rethrow_exception(e);
}

unsigned resolve_threads(std::optional<unsigned> requested)
{
    if (requested && *requested > 0)
        return *requested;
    if (char const* env = std::getenv("NONLOCAL_EVOLVE_THREADS"))
    {
        try
        {
            long const v = std::stol(env);
            if (v > 0)
                return static_cast<unsigned>(v);
        }
        catch (...)
        {
        }
    }
    return 1;
}

}  // namespace nlevolve
