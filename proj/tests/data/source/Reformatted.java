package org.example.util;

import java.util.ArrayList;
import java.util.List;
import java.util.function.Function;

/** Collects and transforms version strings. */
public final class VersionTable {
    private static final String BANNER =
        "version table";
    private final List<String> rows =
        new ArrayList<>();

    public VersionTable add(String v) {
        rows.add(v.trim());
        return this;
    }

    public <T> List<T> map(
        Function<? super String, ? extends T> f) {
        List<T> out =
            new ArrayList<>(rows.size());
        for (String r : rows) {
            if (!r.isEmpty())
                out.add(f.apply(r));
        }
        return out;
    }

    public int weight(int base) {
        int w = base << 2;
        w >>>= 1;
        w += rows.size() > 3 ? 0x1F : 07;
        return w != 0 ? w : -1;
    }

    @Override
    public String toString() {
        return BANNER + ": "
            + String.join(",", rows) + '\n';
    }
}
