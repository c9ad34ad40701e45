#include "sif/errors.hpp"

namespace sif {

int exit_code_for(const std::exception& e) noexcept
{
    if (dynamic_cast<const InvalidArgument*>(&e) || dynamic_cast<const IndexError*>(&e)
        || dynamic_cast<const DimensionError*>(&e))
        return 2;
    if (dynamic_cast<const ResourceError*>(&e))
        return 3;
    if (dynamic_cast<const NumericalError*>(&e))
        return 4;
    return 1;
}

} // namespace sif
