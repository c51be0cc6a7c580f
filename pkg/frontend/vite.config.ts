import { defineConfig } from 'vite';

// The bundle is served by the API binary under /app (or any static host).
export default defineConfig({
  base: '/app/',
  build: { outDir: 'dist' },
  server: {
    proxy: { '/api': 'http://127.0.0.1:8000' },
  },
});
