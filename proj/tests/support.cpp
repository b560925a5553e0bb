#include "support.hpp"

#include "adaptui/harness.hpp"

namespace adaptui::testing {

auto default_oracle() -> ParetoFront const&
{
    static ParetoFront const front = brute_force_front(AdaptationProblem(UserPose::standing_default()),
                                                       kDefaultOracleResolution, ExecutionOptions{.threads = 0});
    return front;
}

} // namespace adaptui::testing
