class PhysicsError(ValueError):
    """A physical precondition is violated (e.g. a speed at or above c)."""
