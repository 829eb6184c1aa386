LINES: list[str] = []
