# Unit tests for exactrc.channel
