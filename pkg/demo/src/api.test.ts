import { afterEach, describe, expect, it, vi } from 'vitest'

import { GatewayError, audioSrc, sendText } from './api'
import type { UiConfig } from './types'

const config: UiConfig = {
  gatewayBaseUrl: 'http://gw.local',
  apiKey: 'k-123',
  voices: ['einstein-fast'],
  suggestions: []
}

function jsonResponse(status: number, body: unknown): Response {
  return new Response(JSON.stringify(body), {
    status,
    headers: { 'content-type': 'application/json' }
  })
}

afterEach(() => {
  vi.unstubAllGlobals()
})

describe('sendText', () => {
  it('posts text and voice with the api key header', async () => {
    const fetchMock = vi.fn().mockResolvedValue(
      jsonResponse(200, { url: 'http://gw.local/audio/v/aa.wav', cached: false, synthesis_ms: 9, audio_duration_ms: 500 })
    )
    vi.stubGlobal('fetch', fetchMock)
    const res = await sendText(config, 'hello there', 'einstein-fast')
    expect(res.url).toBe('http://gw.local/audio/v/aa.wav')
    const [url, init] = fetchMock.mock.calls[0]
    expect(url).toBe('http://gw.local/v1/tts/sync')
    expect(init.method).toBe('POST')
    expect(init.headers['x-api-key']).toBe('k-123')
    expect(JSON.parse(init.body)).toEqual({ text: 'hello there', voice: 'einstein-fast' })
  })

  it('maps gateway error bodies to GatewayError', async () => {
    vi.stubGlobal('fetch', vi.fn().mockResolvedValue(jsonResponse(403, { error: 'forbidden', message: 'nope' })))
    const err = await sendText(config, 'x', 'v').catch((e) => e)
    expect(err).toBeInstanceOf(GatewayError)
    expect(err.status).toBe(403)
    expect(err.code).toBe('forbidden')
    expect(err.message).toBe('nope')
  })

  it('survives non-JSON error bodies', async () => {
    vi.stubGlobal('fetch', vi.fn().mockResolvedValue(new Response('boom', { status: 502 })))
    const err = await sendText(config, 'x', 'v').catch((e) => e)
    expect(err).toBeInstanceOf(GatewayError)
    expect(err.status).toBe(502)
    expect(err.message).toBe('HTTP 502')
  })
})

describe('audioSrc', () => {
  it('returns the url untouched without a key', () => {
    const keyless = { ...config, apiKey: '' }
    expect(audioSrc(keyless, 'http://gw.local/audio/v/aa.wav')).toBe('http://gw.local/audio/v/aa.wav')
  })

  it('appends the api key as a query parameter', () => {
    expect(audioSrc(config, 'http://gw.local/audio/v/aa.wav')).toBe('http://gw.local/audio/v/aa.wav?api_key=k-123')
  })
})
