import hypothesis

# Deterministic test suite: derandomized hypothesis, no deadline (exact
# arithmetic on larger algebras is slow but predictable).
hypothesis.settings.register_profile(
    "exact",
    derandomize=True,
    deadline=None,
    max_examples=100,
)
hypothesis.settings.load_profile("exact")
