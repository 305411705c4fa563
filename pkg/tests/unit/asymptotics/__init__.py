# Unit tests for exactrc.asymptotics
