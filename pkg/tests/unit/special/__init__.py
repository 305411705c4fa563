# Unit tests for exactrc.special
